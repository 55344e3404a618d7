//! Locally inaccessible information (LII) on tripartite pure states.
//!
//! For a pure state on parties A, B, E every ordered pair (X, Y) carries a
//! directional discord δ←_XY — the part of the X:Y mutual information
//! that a local measurement on Y cannot recover. This module computes all
//! six directional discords, combines them into the average ϖ⁺ and
//! balance ϖ⁻ of each pair, sums them along cyclic and directed
//! measurement sequences (LII flows), and evaluates the residual of every
//! conservation identity that links these quantities to the pairwise
//! entanglement of formation across the purification.
//!
//! Routing: a discord δ←_XY is optimized directly when the measured party
//! Y is a single qubit; when Y is composite (or larger than a qubit) and
//! both X and the remaining party are qubits, it is evaluated analytically
//! through the monogamy relation δ←_XY = E_XZ + S(X|Z). Pairs involving a
//! party with zero entropy are product pairs and short-circuit to zero
//! without invoking the optimizer.

use crate::measures::{
    clamp_discord, discord, discord_qubit_qudit_rank2, eof_two_qubit, von_neumann_entropy,
    OptimizerConfig,
};
use crate::qmat::{DensityMatrix, PureState};
use crate::{Error, Result};

/// A party of a pure tripartite state has zero entropy (and every pair
/// that contains it is a product pair) below this threshold, in bits.
pub const DEGENERATE_ENTROPY: f64 = 1e-9;

/// Threshold on S(ρ_AB) below which the pair is treated as pure and the
/// pure-state conditional-entropy identity applies.
const PURE_PAIR_ENTROPY: f64 = 1e-9;

/// Classification threshold for the sign of a conditional entropy.
pub const SIGN_THRESHOLD: f64 = 1e-6;

/// The three parties of a tripartite split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
    E,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::E];

    fn index(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::E => 2,
        }
    }

    /// The remaining party of the triple.
    pub fn third(self, other: Party) -> Party {
        debug_assert_ne!(self, other);
        *Party::ALL
            .iter()
            .find(|&&p| p != self && p != other)
            .expect("two distinct parties leave one")
    }

    fn tag(self) -> &'static str {
        match self {
            Party::A => "A",
            Party::B => "B",
            Party::E => "E",
        }
    }
}

/// Maps the labels A, B, E onto disjoint subsystem-index sets that cover
/// the pure state. E may be composite (several subsystems acting as one
/// party).
#[derive(Debug, Clone)]
pub struct TripartiteLabels {
    parties: [Vec<usize>; 3],
}

impl TripartiteLabels {
    pub fn new(a: Vec<usize>, b: Vec<usize>, e: Vec<usize>) -> Self {
        Self { parties: [a, b, e] }
    }

    /// The default single-subsystem split A=0, B=1, E=2.
    pub fn qubits() -> Self {
        Self::new(vec![0], vec![1], vec![2])
    }

    /// A = 0, B = 1, E = everything else (used when the environment is a
    /// register of reservoir qubits).
    pub fn composite_environment(n_subsystems: usize) -> Self {
        Self::new(vec![0], vec![1], (2..n_subsystems).collect())
    }

    pub fn party(&self, p: Party) -> &[usize] {
        &self.parties[p.index()]
    }

    /// Sorted indices of an ordered pair of parties.
    fn pair_indices(&self, x: Party, y: Party) -> Vec<usize> {
        let mut keep: Vec<usize> = self.party(x).iter().chain(self.party(y)).copied().collect();
        keep.sort_unstable();
        keep
    }

    fn validate(&self, psi: &PureState) -> Result<()> {
        let n = psi.n_subsystems();
        let mut all: Vec<usize> = self.parties.iter().flatten().copied().collect();
        all.sort_unstable();
        let expected: Vec<usize> = (0..n).collect();
        if all != expected || self.parties.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidSubsystems(format!(
                "labels {:?} must partition 0..{n} into three non-empty parties",
                self.parties
            )));
        }
        Ok(())
    }

    fn party_dim(&self, psi: &PureState, p: Party) -> usize {
        self.party(p).iter().map(|&i| psi.dims()[i]).product()
    }

    fn is_single_qubit(&self, psi: &PureState, p: Party) -> bool {
        let idx = self.party(p);
        idx.len() == 1 && psi.dims()[idx[0]] == 2
    }
}

/// How a directional discord was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscordRoute {
    /// Grid + simplex optimization of the measurement on a qubit.
    Direct,
    /// Monogamy shortcut δ←_XY = E_XZ + S(X|Z) through the bridge party.
    Analytic,
    /// A party of the pair has zero entropy; the pair is product and the
    /// discord is zero by definition.
    Degenerate,
}

impl DiscordRoute {
    fn tag(self) -> &'static str {
        match self {
            DiscordRoute::Direct => "direct",
            DiscordRoute::Analytic => "kw",
            DiscordRoute::Degenerate => "deg",
        }
    }
}

/// How a pairwise EOF was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EofRoute {
    /// Wootters closed form on a two-qubit reduction.
    Wootters,
    /// Monogamy relation E_XY = δ←_XZ + S(X|Z) with a numeric discord.
    Monogamy,
    /// Product pair; zero by definition.
    Degenerate,
}

impl EofRoute {
    fn tag(self) -> &'static str {
        match self {
            EofRoute::Wootters => "wootters",
            EofRoute::Monogamy => "monog",
            EofRoute::Degenerate => "deg",
        }
    }
}

/// Average and balance of LII for one pair, together with the two
/// directional discords they are built from.
#[derive(Debug, Clone, Copy)]
pub struct LiiReport {
    /// ϖ⁺ = (δ←_XY + δ←_YX) / 2
    pub avg: f64,
    /// ϖ⁻ = (δ←_XY − δ←_YX) / 2
    pub balance: f64,
    pub delta_xy: f64,
    pub delta_yx: f64,
}

/// Cyclic and directed LII flows: sums of directional discords along
/// measurement sequences.
#[derive(Debug, Clone, Copy)]
pub struct FlowReport {
    /// E→B, B→A, A→E measured cyclically: δ←_BE + δ←_AB + δ←_EA.
    pub cw: f64,
    /// The reverse cycle: δ←_BA + δ←_EB + δ←_AE.
    pub ccw: f64,
    /// E→A→B: δ←_BE + δ←_AE + δ←_BA.
    pub e_a_b: f64,
    /// B→A→E: δ←_EB + δ←_AB + δ←_EA.
    pub b_a_e: f64,
    /// E→B→A: δ←_AE + δ←_BE + δ←_AB.
    pub e_b_a: f64,
    /// A→B→E: δ←_EA + δ←_BA + δ←_EB.
    pub a_b_e: f64,
    /// E→(A,B): δ←_AE + δ←_BE.
    pub e_to_pair: f64,
    /// (A,B)→E: δ←_EA + δ←_EB.
    pub pair_to_e: f64,
}

impl FlowReport {
    /// Directed flows as labeled entries, in a fixed order.
    pub fn directed(&self) -> [(&'static str, f64); 6] {
        [
            ("E->A->B", self.e_a_b),
            ("B->A->E", self.b_a_e),
            ("E->B->A", self.e_b_a),
            ("A->B->E", self.a_b_e),
            ("E->(A,B)", self.e_to_pair),
            ("(A,B)->E", self.pair_to_e),
        ]
    }
}

/// One evaluated conservation identity: both sides and the routes of the
/// discord/EOF terms entering them.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub route: String,
}

impl IdentityCheck {
    pub fn residual(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Residuals of every conservation identity evaluated on one tripartite
/// pure state.
#[derive(Debug, Clone)]
pub struct IdentityResiduals {
    checks: Vec<IdentityCheck>,
}

impl IdentityResiduals {
    pub fn checks(&self) -> &[IdentityCheck] {
        &self.checks
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.residual())
    }

    /// The worst residual and the identity attaining it.
    pub fn max_residual(&self) -> (&'static str, f64) {
        self.checks
            .iter()
            .map(|c| (c.name, c.residual()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("at least one identity is always evaluated")
    }
}

/// Sign classification of a conditional entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropySign {
    Negative,
    Zero,
    Positive,
}

pub fn classify_sign(value: f64) -> EntropySign {
    if value < -SIGN_THRESHOLD {
        EntropySign::Negative
    } else if value > SIGN_THRESHOLD {
        EntropySign::Positive
    } else {
        EntropySign::Zero
    }
}

/// S(A|B) evaluated directly and through the discord difference
/// δ←_BA − δ←_EA (which equals −S(A|B) on pure tripartite states).
#[derive(Debug, Clone, Copy)]
pub struct ConditionalEntropySign {
    /// S(A|B) from the entropies of ρ_AB and ρ_B.
    pub direct: f64,
    /// δ←_BA − δ←_EA.
    pub lii_difference: f64,
    pub class_direct: EntropySign,
    pub class_from_lii: EntropySign,
}

/// Every pairwise quantity of one tripartite pure state: the six
/// directional discords, the three pairwise EOFs, and the routes that
/// produced them. This is the shared workhorse behind flows and residual
/// reports.
#[derive(Debug, Clone)]
pub struct PairwiseLii {
    delta: [[f64; 3]; 3],
    delta_route: [[Option<DiscordRoute>; 3]; 3],
    eof: [f64; 3],
    eof_route: [EofRoute; 3],
    party_entropy: [f64; 3],
    pair_entropy: [f64; 3],
}

fn pair_slot(x: Party, y: Party) -> usize {
    // indexed by the missing party
    x.third(y).index()
}

impl PairwiseLii {
    pub fn compute(
        psi: &PureState,
        labels: &TripartiteLabels,
        cfg: &OptimizerConfig,
    ) -> Result<Self> {
        labels.validate(psi)?;
        cfg.validate()?;

        let mut party_entropy = [0.0; 3];
        for p in Party::ALL {
            let rho = psi.reduced(labels.party(p))?;
            party_entropy[p.index()] = von_neumann_entropy(&rho)?;
        }

        let mut pair_entropy = [0.0; 3];
        let mut pair_rho: [Option<DensityMatrix>; 3] = [None, None, None];
        for (x, y) in [
            (Party::A, Party::B),
            (Party::A, Party::E),
            (Party::B, Party::E),
        ] {
            let rho = psi.reduced(&labels.pair_indices(x, y))?;
            pair_entropy[pair_slot(x, y)] = von_neumann_entropy(&rho)?;
            pair_rho[pair_slot(x, y)] = Some(rho);
        }

        let mut out = Self {
            delta: [[0.0; 3]; 3],
            delta_route: [[None; 3]; 3],
            eof: [0.0; 3],
            eof_route: [EofRoute::Degenerate; 3],
            party_entropy,
            pair_entropy,
        };

        for x in Party::ALL {
            for y in Party::ALL {
                if x == y {
                    continue;
                }
                let (value, route) = directional_discord(
                    psi,
                    labels,
                    cfg,
                    &party_entropy,
                    pair_rho[pair_slot(x, y)].as_ref().unwrap(),
                    x,
                    y,
                )?;
                out.delta[x.index()][y.index()] = value;
                out.delta_route[x.index()][y.index()] = Some(route);
            }
        }

        for (x, y) in [
            (Party::A, Party::B),
            (Party::A, Party::E),
            (Party::B, Party::E),
        ] {
            let slot = pair_slot(x, y);
            let (value, route) = pair_eof(
                psi,
                labels,
                cfg,
                &party_entropy,
                pair_rho[slot].as_ref().unwrap(),
                x,
                y,
            )?;
            out.eof[slot] = value;
            out.eof_route[slot] = route;
        }

        Ok(out)
    }

    /// δ←_XY: discord of the pair with the measurement on Y.
    pub fn delta(&self, x: Party, y: Party) -> f64 {
        self.delta[x.index()][y.index()]
    }

    pub fn delta_route(&self, x: Party, y: Party) -> DiscordRoute {
        self.delta_route[x.index()][y.index()].expect("ordered pair of distinct parties")
    }

    /// E_XY, symmetric in the pair.
    pub fn eof(&self, x: Party, y: Party) -> f64 {
        self.eof[pair_slot(x, y)]
    }

    pub fn eof_route(&self, x: Party, y: Party) -> EofRoute {
        self.eof_route[pair_slot(x, y)]
    }

    pub fn party_entropy(&self, p: Party) -> f64 {
        self.party_entropy[p.index()]
    }

    /// Entropy of the joint reduction of a pair.
    pub fn pair_entropy(&self, x: Party, y: Party) -> f64 {
        self.pair_entropy[pair_slot(x, y)]
    }

    /// ϖ⁺_{X|Y} = (δ←_XY + δ←_YX) / 2.
    pub fn avg(&self, x: Party, y: Party) -> f64 {
        (self.delta(x, y) + self.delta(y, x)) / 2.0
    }

    /// ϖ⁻_{X|Y} = (δ←_XY − δ←_YX) / 2.
    pub fn balance(&self, x: Party, y: Party) -> f64 {
        (self.delta(x, y) - self.delta(y, x)) / 2.0
    }

    fn flows(&self) -> FlowReport {
        use Party::{A, B, E};
        FlowReport {
            cw: self.delta(B, E) + self.delta(A, B) + self.delta(E, A),
            ccw: self.delta(B, A) + self.delta(E, B) + self.delta(A, E),
            e_a_b: self.delta(B, E) + self.delta(A, E) + self.delta(B, A),
            b_a_e: self.delta(E, B) + self.delta(A, B) + self.delta(E, A),
            e_b_a: self.delta(A, E) + self.delta(B, E) + self.delta(A, B),
            a_b_e: self.delta(E, A) + self.delta(B, A) + self.delta(E, B),
            e_to_pair: self.delta(A, E) + self.delta(B, E),
            pair_to_e: self.delta(E, A) + self.delta(E, B),
        }
    }

    fn route_tag_delta(&self, x: Party, y: Party) -> String {
        format!("d{}{}:{}", x.tag(), y.tag(), self.delta_route(x, y).tag())
    }

    fn route_tag_eof(&self, x: Party, y: Party) -> String {
        format!("E{}{}:{}", x.tag(), y.tag(), self.eof_route(x, y).tag())
    }
}

fn directional_discord(
    psi: &PureState,
    labels: &TripartiteLabels,
    cfg: &OptimizerConfig,
    party_entropy: &[f64; 3],
    rho_xy: &DensityMatrix,
    x: Party,
    y: Party,
) -> Result<(f64, DiscordRoute)> {
    if party_entropy[x.index()] < DEGENERATE_ENTROPY
        || party_entropy[y.index()] < DEGENERATE_ENTROPY
    {
        return Ok((0.0, DiscordRoute::Degenerate));
    }
    if labels.is_single_qubit(psi, y) {
        let keep = labels.pair_indices(x, y);
        let measured = keep.iter().position(|&k| k == labels.party(y)[0]).unwrap();
        return Ok((discord(rho_xy, measured, cfg)?, DiscordRoute::Direct));
    }
    let z = x.third(y);
    if labels.party_dim(psi, x) == 2 && labels.is_single_qubit(psi, z) {
        let raw =
            discord_qubit_qudit_rank2(psi, labels.party(x), labels.party(y), labels.party(z))?;
        return Ok((clamp_discord(raw, cfg.tol)?, DiscordRoute::Analytic));
    }
    Err(Error::NoRoute(format!(
        "δ←_{}{} needs either a qubit measured party or qubit X and bridge",
        x.tag(),
        y.tag()
    )))
}

fn pair_eof(
    psi: &PureState,
    labels: &TripartiteLabels,
    cfg: &OptimizerConfig,
    party_entropy: &[f64; 3],
    rho_xy: &DensityMatrix,
    x: Party,
    y: Party,
) -> Result<(f64, EofRoute)> {
    if party_entropy[x.index()] < DEGENERATE_ENTROPY
        || party_entropy[y.index()] < DEGENERATE_ENTROPY
    {
        return Ok((0.0, EofRoute::Degenerate));
    }
    if labels.is_single_qubit(psi, x) && labels.is_single_qubit(psi, y) {
        return Ok((eof_two_qubit(rho_xy)?, EofRoute::Wootters));
    }
    // E_XY = δ←_XZ + S(X|Z) with the bridge Z measured numerically; the
    // roles of x and y can swap since EOF is symmetric.
    let z = x.third(y);
    for target in [x, y] {
        if labels.party_dim(psi, target) == 2 && labels.is_single_qubit(psi, z) {
            let keep = labels.pair_indices(target, z);
            let measured = keep.iter().position(|&k| k == labels.party(z)[0]).unwrap();
            let rho_xz = psi.reduced(&keep)?;
            let delta_xz = discord(&rho_xz, measured, cfg)?;
            let s_xz = von_neumann_entropy(&rho_xz)?;
            let s_z = von_neumann_entropy(&rho_xz.partial_trace(&[measured])?)?;
            return Ok((delta_xz + (s_xz - s_z), EofRoute::Monogamy));
        }
    }
    Err(Error::NoRoute(format!(
        "E_{}{} needs two qubits or a qubit with a qubit bridge",
        x.tag(),
        y.tag()
    )))
}

/// δ←_XY for one ordered pair, with the route that produced it.
pub fn pairwise_discord(
    psi: &PureState,
    labels: &TripartiteLabels,
    x: Party,
    y: Party,
    cfg: &OptimizerConfig,
) -> Result<(f64, DiscordRoute)> {
    labels.validate(psi)?;
    if x == y {
        return Err(Error::InvalidSubsystems("pair parties must differ".into()));
    }
    let mut party_entropy = [0.0; 3];
    for p in Party::ALL {
        party_entropy[p.index()] = von_neumann_entropy(&psi.reduced(labels.party(p))?)?;
    }
    let rho_xy = psi.reduced(&labels.pair_indices(x, y))?;
    directional_discord(psi, labels, cfg, &party_entropy, &rho_xy, x, y)
}

/// Average and balance of LII for the ordered pair (X, Y).
pub fn lii_pair(
    psi: &PureState,
    labels: &TripartiteLabels,
    x: Party,
    y: Party,
    cfg: &OptimizerConfig,
) -> Result<LiiReport> {
    let (delta_xy, _) = pairwise_discord(psi, labels, x, y, cfg)?;
    let (delta_yx, _) = pairwise_discord(psi, labels, y, x, cfg)?;
    Ok(LiiReport {
        avg: (delta_xy + delta_yx) / 2.0,
        balance: (delta_xy - delta_yx) / 2.0,
        delta_xy,
        delta_yx,
    })
}

/// All cyclic and directed LII flows of the state.
pub fn flows(
    psi: &PureState,
    labels: &TripartiteLabels,
    cfg: &OptimizerConfig,
) -> Result<FlowReport> {
    Ok(PairwiseLii::compute(psi, labels, cfg)?.flows())
}

/// Evaluates every conservation identity on the state and returns the
/// residual report.
pub fn identity_residuals(
    psi: &PureState,
    labels: &TripartiteLabels,
    cfg: &OptimizerConfig,
) -> Result<IdentityResiduals> {
    let lii = PairwiseLii::compute(psi, labels, cfg)?;
    Ok(build_residuals(&lii))
}

fn build_residuals(lii: &PairwiseLii) -> IdentityResiduals {
    use Party::{A, B, E};

    let d = |x, y| lii.delta(x, y);
    let eof = |x, y| lii.eof(x, y);
    let flows = lii.flows();

    let routes = |deltas: &[(Party, Party)], eofs: &[(Party, Party)]| -> String {
        let mut parts: Vec<String> = deltas
            .iter()
            .map(|&(x, y)| lii.route_tag_delta(x, y))
            .collect();
        parts.extend(eofs.iter().map(|&(x, y)| lii.route_tag_eof(x, y)));
        parts.join(";")
    };
    let all_deltas: [(Party, Party); 6] = [(A, B), (B, A), (A, E), (E, A), (B, E), (E, B)];

    // conditional entropy of A given B, from the pair reduction
    let s_a_given_b = lii.pair_entropy(A, B) - lii.party_entropy(B);
    let eof_sum = eof(A, B) + eof(A, E) + eof(B, E);

    let mut checks = vec![
        IdentityCheck {
            name: "law1",
            lhs: eof(A, B) + eof(A, E),
            rhs: d(A, B) + d(A, E),
            route: routes(&[(A, B), (A, E)], &[(A, B), (A, E)]),
        },
        IdentityCheck {
            name: "law2",
            lhs: eof(A, B) + eof(B, E),
            rhs: d(B, A) + d(B, E),
            route: routes(&[(B, A), (B, E)], &[(A, B), (B, E)]),
        },
        IdentityCheck {
            name: "law3",
            lhs: eof(A, E) + eof(B, E),
            rhs: d(E, A) + d(E, B),
            route: routes(&[(E, A), (E, B)], &[(A, E), (B, E)]),
        },
        IdentityCheck {
            name: "eab2",
            lhs: eof(A, B),
            rhs: lii.avg(A, B) - lii.balance(E, A) - lii.balance(E, B),
            route: routes(&all_deltas, &[(A, B)]),
        },
        IdentityCheck {
            name: "sum_avg",
            lhs: eof_sum,
            rhs: lii.avg(A, B) + lii.avg(A, E) + lii.avg(B, E),
            route: routes(&all_deltas, &[(A, B), (A, E), (B, E)]),
        },
        IdentityCheck {
            name: "sum_flows",
            lhs: eof_sum,
            rhs: (flows.cw + flows.ccw) / 2.0,
            route: routes(&all_deltas, &[(A, B), (A, E), (B, E)]),
        },
        IdentityCheck {
            name: "flow_equality",
            lhs: flows.cw,
            rhs: flows.ccw,
            route: routes(&all_deltas, &[]),
        },
        IdentityCheck {
            name: "cyclic_balance",
            lhs: lii.balance(A, B) + lii.balance(B, E) + lii.balance(E, A),
            rhs: 0.0,
            route: routes(&all_deltas, &[]),
        },
        IdentityCheck {
            name: "dif",
            lhs: eof(A, B) - d(A, B),
            rhs: lii.balance(B, A) + lii.balance(A, E) + lii.balance(B, E),
            route: routes(&all_deltas, &[(A, B)]),
        },
        IdentityCheck {
            name: "dif3",
            lhs: eof(A, B) - d(A, B),
            rhs: (flows.e_a_b - flows.b_a_e) / 2.0,
            route: routes(&all_deltas, &[(A, B)]),
        },
        IdentityCheck {
            name: "eab3",
            lhs: eof(A, B) - lii.avg(A, B),
            rhs: (flows.e_to_pair - flows.pair_to_e) / 2.0,
            route: routes(&all_deltas, &[(A, B)]),
        },
        IdentityCheck {
            name: "minimal",
            lhs: eof(A, B),
            rhs: d(A, B) + d(B, E) - d(E, B),
            route: routes(&[(A, B), (B, E), (E, B)], &[(A, B)]),
        },
        IdentityCheck {
            name: "minimal2",
            lhs: eof(A, B),
            rhs: d(B, A) + d(A, E) - d(E, A),
            route: routes(&[(B, A), (A, E), (E, A)], &[(A, B)]),
        },
        IdentityCheck {
            name: "entropia",
            lhs: -s_a_given_b,
            rhs: d(B, A) - d(E, A),
            route: routes(&[(B, A), (E, A)], &[]),
        },
    ];

    if lii.pair_entropy(A, B) < PURE_PAIR_ENTROPY {
        checks.push(IdentityCheck {
            name: "pure_cond",
            lhs: -s_a_given_b,
            rhs: d(B, A),
            route: routes(&[(B, A)], &[]),
        });
    }

    IdentityResiduals { checks }
}

/// S(A|B) computed directly and via δ←_BA − δ←_EA, with sign
/// classifications of both.
pub fn conditional_entropy_sign(
    psi: &PureState,
    labels: &TripartiteLabels,
    cfg: &OptimizerConfig,
) -> Result<ConditionalEntropySign> {
    use Party::{A, B, E};
    labels.validate(psi)?;
    let keep = labels.pair_indices(A, B);
    let rho_ab = psi.reduced(&keep)?;
    let b_pos = keep
        .iter()
        .position(|k| labels.party(B).contains(k))
        .unwrap();
    let s_ab = von_neumann_entropy(&rho_ab)?;
    let s_b = von_neumann_entropy(&rho_ab.partial_trace(&[b_pos])?)?;
    let direct = s_ab - s_b;

    let (d_ba, _) = pairwise_discord(psi, labels, B, A, cfg)?;
    let (d_ea, _) = pairwise_discord(psi, labels, E, A, cfg)?;
    let lii_difference = d_ba - d_ea;

    Ok(ConditionalEntropySign {
        direct,
        lii_difference,
        class_direct: classify_sign(direct),
        class_from_lii: classify_sign(-lii_difference),
    })
}
