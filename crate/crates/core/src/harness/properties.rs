//! The property registry. Each property draws one random skeleton per
//! case plus whatever points it needs, and checks its claim exactly over
//! the cut decomposition of the points involved.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use super::generate::{case_rng, random_point, random_skeleton, random_vertex, GeneratorConfig};
use super::oracle::Oracle;
use super::HarnessError;
use crate::metric::Parametrization;
use crate::rational::{format_big, format_rational, to_big, Q};
use crate::region::{is_subset, Atom, Expr, Region};
use crate::tangent::{same_class, tangent_class, tangent_space};
use crate::topology::{
    chain_family, hausdorff_witness, is_inaccessible_by_directed_joins, is_scott_open,
    is_upper_set, scott_views_differ_witness, separates, upper_set_violation, weak_open_witnesses,
};
use crate::tree::{OrderView, Point, TreeSkeleton};

/// A registered property.
pub struct PropertySpec {
    /// Stable identifier used by the CLI and in failure records.
    pub name: &'static str,
    /// The mathematical statement being checked.
    pub reference: &'static str,
    check: fn(&mut Case) -> Verdict,
}

impl std::fmt::Debug for PropertySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PropertySpec")
            .field("name", &self.name)
            .field("reference", &self.reference)
            .finish()
    }
}

pub(crate) struct CaseOutcome {
    pub tree: String,
    /// False for vacuous cases (nothing to quantify over).
    pub counted: bool,
    pub detail: Option<String>,
}

impl PropertySpec {
    pub(crate) fn run_case(
        &self,
        config: &GeneratorConfig,
        seed: u64,
        fault: bool,
    ) -> Result<CaseOutcome, HarnessError> {
        let mut rng = case_rng(seed);
        let skeleton = Arc::new(random_skeleton(config, &mut rng)?);
        let tree = skeleton.to_string();
        let mut case = Case {
            sk: skeleton,
            rng,
            max_den: config.max_denominator,
            fault,
        };
        let (counted, detail) = match (self.check)(&mut case) {
            Verdict::Pass => (true, None),
            Verdict::Vacuous => (false, None),
            Verdict::Fail(detail) => (true, Some(detail)),
        };
        Ok(CaseOutcome {
            tree,
            counted,
            detail,
        })
    }
}

enum Verdict {
    Pass,
    Vacuous,
    Fail(String),
}

struct Case {
    sk: Arc<TreeSkeleton>,
    rng: ChaCha8Rng,
    max_den: u32,
    fault: bool,
}

impl Case {
    fn point(&mut self) -> Point {
        random_point(&self.sk, &mut self.rng, self.max_den)
    }

    fn vertex(&mut self) -> Point {
        random_vertex(&self.sk, &mut self.rng)
    }

    /// A random point different from all of `avoid`, if one turns up.
    fn point_avoiding(&mut self, avoid: &[Point]) -> Option<Point> {
        (0..32).map(|_| self.point()).find(|p| !avoid.contains(p))
    }

    fn pick(&mut self, from: &[Point]) -> Option<Point> {
        if from.is_empty() {
            None
        } else {
            Some(from[self.rng.random_range(0..from.len())])
        }
    }

    fn view(&self, base: Point) -> OrderView {
        OrderView::new(self.sk.clone(), base).expect("generated point")
    }

    fn oracle(&self) -> Oracle<'_> {
        Oracle::new(&self.sk)
    }

    fn cuts(&self, pts: &[Point]) -> Vec<Point> {
        self.sk.cut_points(pts)
    }

    /// The Scott-openness decider, inverted under fault injection.
    fn scott_open(&self, region: &Region, view: &OrderView) -> bool {
        is_scott_open(region, view) != self.fault
    }

    fn show(&self, p: &Point) -> String {
        self.sk.display_point(p)
    }

    fn show_all(&self, pts: &[Point]) -> String {
        let names: Vec<String> = pts.iter().map(|p| self.show(p)).collect();
        format!("[{}]", names.join(", "))
    }

    fn random_atom(&mut self, view: &OrderView) -> Atom {
        match self.rng.random_range(0..6) {
            0 | 1 => {
                let t = self.point();
                match self.point_avoiding(&[t]) {
                    Some(a) => {
                        Atom::Class(tangent_class(&self.sk, &a, &t).expect("a differs from t"))
                    }
                    None => Atom::Up(view.base()),
                }
            }
            2 => Atom::Up(self.point()),
            3 => Atom::StrictUp(self.point()),
            4 => Atom::Singleton(self.point()),
            _ => {
                if self.rng.random_bool(0.5) {
                    Atom::Whole
                } else {
                    Atom::Empty
                }
            }
        }
    }

    fn random_expr(&mut self, view: &OrderView, depth: u32) -> Expr {
        if depth == 0 || self.rng.random_bool(0.3) {
            return Expr::Atom(self.random_atom(view));
        }
        match self.rng.random_range(0..3) {
            0 => Expr::Union(
                Box::new(self.random_expr(view, depth - 1)),
                Box::new(self.random_expr(view, depth - 1)),
            ),
            1 => Expr::Intersection(
                Box::new(self.random_expr(view, depth - 1)),
                Box::new(self.random_expr(view, depth - 1)),
            ),
            _ => Expr::Complement(Box::new(self.random_expr(view, depth - 1))),
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Verdict::Fail(format!($($arg)+));
        }
    };
}

/// Every registered property, in documentation order.
pub fn registry() -> &'static [PropertySpec] {
    REGISTRY
}

static REGISTRY: &[PropertySpec] = &[
    PropertySpec {
        name: "meet-glb",
        reference: "a ∧ b is the greatest common lower bound of a and b; meet is commutative and associative",
        check: meet_glb,
    },
    PropertySpec {
        name: "infimum-permutation",
        reference: "every finite set admits an infimum, obtained by folding pairwise meets in any order",
        check: infimum_permutation,
    },
    PropertySpec {
        name: "meet-index-agreement",
        reference: "the ancestor-table meet agrees with meet by explicit path comparison",
        check: meet_index_agreement,
    },
    PropertySpec {
        name: "lemma-segment-triangle",
        reference: "[a,c] ⊆ [a,b] ∪ [b,c]",
        check: lemma_segment_triangle,
    },
    PropertySpec {
        name: "segment-representation",
        reference: "segment(a,b) is the geodesic from a to b",
        check: segment_representation,
    },
    PropertySpec {
        name: "segment-base-invariance",
        reference: "[a,b] as a point set does not depend on the base of the order",
        check: segment_base_invariance,
    },
    PropertySpec {
        name: "reroot-base-smallest",
        reference: "t ⪯_t x for every x; rerooting back at the root recovers the root order",
        check: reroot_base_smallest,
    },
    PropertySpec {
        name: "segment-total-order",
        reference: "for a ⪯ b the segment [a,b] is totally ordered",
        check: segment_total_order,
    },
    PropertySpec {
        name: "tangent-equivalence",
        reference: "∼_t is an equivalence relation on T ∖ {t}",
        check: tangent_equivalence,
    },
    PropertySpec {
        name: "tangent-partition",
        reference: "every x ≠ t lies in exactly one tangent class at t",
        check: tangent_partition,
    },
    PropertySpec {
        name: "tangent-reroot-invariance",
        reference: "a ∼_t b does not depend on the base of the order",
        check: tangent_reroot_invariance,
    },
    PropertySpec {
        name: "tangent-class-equality",
        reference: "[a]_t = [b]_t as point sets iff a ∼_t b",
        check: tangent_class_equality,
    },
    PropertySpec {
        name: "psi-parametrization",
        reference: "Ψ = 1 + dist(base, ·) is increasing, affine with slope 1 along segments, and Ψ(base) = 1",
        check: psi_parametrization,
    },
    PropertySpec {
        name: "metric-axioms",
        reference: "d_Ψ is a metric: identity, symmetry, triangle inequality",
        check: metric_axioms,
    },
    PropertySpec {
        name: "metric-meet-additivity",
        reference: "d_Ψ(a,b) = d_Ψ(a, a∧b) + d_Ψ(a∧b, b)",
        check: metric_meet_additivity,
    },
    PropertySpec {
        name: "metric-monotone-shrinking",
        reference: "a ⪯ b ⪯ c implies d_Ψ(b,c) ≤ d_Ψ(a,c)",
        check: metric_monotone_shrinking,
    },
    PropertySpec {
        name: "theorem-metric-coarser",
        reference: "the weak tree topology is coarser than or equal to the topology associated with the metric",
        check: theorem_metric_coarser,
    },
    PropertySpec {
        name: "decider-agreement",
        reference: "Scott-open iff upper set and inaccessible by directed joins",
        check: decider_agreement,
    },
    PropertySpec {
        name: "lemma-inaccessible",
        reference: "every [a]_t is inaccessible by directed joins under every base",
        check: lemma_inaccessible,
    },
    PropertySpec {
        name: "lemma-upper-set",
        reference: "[a]_t is an upper set under base t; under base r it is one iff t ≺_r a",
        check: lemma_upper_set,
    },
    PropertySpec {
        name: "prop-scott-weak-open",
        reference: "every Scott open set is open in the weak tree topology",
        check: prop_scott_weak_open,
    },
    PropertySpec {
        name: "theorem-strict-coarseness",
        reference: "the Scott topology is strictly coarser than the weak tree topology",
        check: theorem_strict_coarseness,
    },
    PropertySpec {
        name: "theorem-generated-topology",
        reference: "the weak tree topology is the topology generated by the Scott topologies of all bases",
        check: theorem_generated_topology,
    },
    PropertySpec {
        name: "remark-hausdorff",
        reference: "the weak tree topology is always Hausdorff",
        check: remark_hausdorff,
    },
    PropertySpec {
        name: "remark-scott-views-differ",
        reference: "Scott topologies for different bases differ",
        check: remark_scott_views_differ,
    },
];

fn meet_glb(case: &mut Case) -> Verdict {
    let (t, a, b, c) = (case.point(), case.point(), case.point(), case.point());
    let view = case.view(t);
    let o = case.oracle();
    let cuts = case.cuts(&[t, a, b, c]);
    let m = view.meet(&a, &b);
    let expected = o.meet(&t, &a, &b, &cuts);
    ensure!(
        expected == Some(m),
        "base {}: meet({}, {}) = {}, brute force gives {:?}",
        case.show(&t),
        case.show(&a),
        case.show(&b),
        case.show(&m),
        expected.map(|e| case.show(&e))
    );
    ensure!(
        view.leq(&m, &a) && view.leq(&m, &b),
        "meet {} is not a lower bound",
        case.show(&m)
    );
    for x in &cuts {
        for y in [&a, &b, &m] {
            ensure!(
                view.leq(x, y) == o.leq(&t, x, y),
                "base {}: leq({}, {}) disagrees with brute force",
                case.show(&t),
                case.show(x),
                case.show(y)
            );
        }
        if view.leq(x, &a) && view.leq(x, &b) {
            ensure!(
                view.leq(x, &m),
                "base {}: lower bound {} of {}, {} is not below the meet {}",
                case.show(&t),
                case.show(x),
                case.show(&a),
                case.show(&b),
                case.show(&m)
            );
        }
    }
    ensure!(view.meet(&b, &a) == m, "meet is not commutative");
    ensure!(
        view.meet(&view.meet(&a, &b), &c) == view.meet(&a, &view.meet(&b, &c)),
        "meet is not associative on {}, {}, {}",
        case.show(&a),
        case.show(&b),
        case.show(&c)
    );
    Verdict::Pass
}

fn infimum_permutation(case: &mut Case) -> Verdict {
    let t = case.point();
    let k = case.rng.random_range(2..=5);
    let mut set: Vec<Point> = (0..k).map(|_| case.point()).collect();
    let view = case.view(t);
    let mut all = set.clone();
    all.push(t);
    let cuts = case.cuts(&all);
    let inf = match view.infimum(&set) {
        Ok(p) => p,
        Err(e) => return Verdict::Fail(format!("infimum failed: {e}")),
    };
    let expected = case.oracle().infimum(&t, &set, &cuts);
    ensure!(
        expected == Some(inf),
        "base {}: inf {} = {}, brute force gives {:?}",
        case.show(&t),
        case.show_all(&set),
        case.show(&inf),
        expected.map(|e| case.show(&e))
    );
    for _ in 0..12 {
        set.shuffle(&mut case.rng);
        let left = set[1..].iter().fold(set[0], |acc, p| view.meet(&acc, p));
        let right = set[..set.len() - 1]
            .iter()
            .rev()
            .fold(set[set.len() - 1], |acc, p| view.meet(p, &acc));
        ensure!(
            left == inf && right == inf,
            "base {}: folding {} gives {} / {}, infimum is {}",
            case.show(&t),
            case.show_all(&set),
            case.show(&left),
            case.show(&right),
            case.show(&inf)
        );
    }
    Verdict::Pass
}

fn meet_index_agreement(case: &mut Case) -> Verdict {
    let indexed = Arc::new(TreeSkeleton::clone(&case.sk).with_lca_index());
    ensure!(indexed.has_lca_index(), "index was not built");
    for u in case.sk.vertices() {
        for v in case.sk.vertices() {
            ensure!(
                indexed.lca(u, v) == case.sk.lca_by_climbing(u, v),
                "lca({}, {}) differs between index and climbing",
                case.sk.name(u),
                case.sk.name(v)
            );
        }
    }
    for _ in 0..10 {
        let (t, a, b) = (case.point(), case.point(), case.point());
        ensure!(
            indexed.root_meet(&a, &b) == case.sk.root_meet_by_climbing(&a, &b),
            "root meet of {}, {} differs between index and climbing",
            case.show(&a),
            case.show(&b)
        );
        let plain = case.view(t);
        let fast = OrderView::new(indexed.clone(), t).expect("same skeleton");
        ensure!(
            plain.meet(&a, &b) == fast.meet(&a, &b) && plain.leq(&a, &b) == fast.leq(&a, &b),
            "base {}: indexed view disagrees on {}, {}",
            case.show(&t),
            case.show(&a),
            case.show(&b)
        );
    }
    Verdict::Pass
}

fn lemma_segment_triangle(case: &mut Case) -> Verdict {
    let (a, b, c) = (case.point(), case.point(), case.point());
    let o = case.oracle();
    let (ac, ab, bc) = (
        case.sk.segment(&a, &c),
        case.sk.segment(&a, &b),
        case.sk.segment(&b, &c),
    );
    for x in case.cuts(&[a, b, c]) {
        ensure!(
            ac.contains(&x) == o.on_segment(&x, &a, &c),
            "membership of {} in [{}, {}] disagrees with brute force",
            case.show(&x),
            case.show(&a),
            case.show(&c)
        );
        ensure!(
            !ac.contains(&x) || ab.contains(&x) || bc.contains(&x),
            "{} lies in [{a}, {c}] but not in [{a}, {b}] ∪ [{b}, {c}]",
            case.show(&x),
            a = case.show(&a),
            b = case.show(&b),
            c = case.show(&c)
        );
    }
    Verdict::Pass
}

fn segment_representation(case: &mut Case) -> Verdict {
    let (a, b) = (case.point(), case.point());
    let o = case.oracle();
    let path = case.sk.segment(&a, &b);
    let back = case.sk.segment(&b, &a);
    ensure!(
        path.length() == o.distance(&a, &b),
        "segment length {} differs from distance {}",
        format_rational(&path.length()),
        format_rational(&o.distance(&a, &b))
    );
    ensure!(
        path.arcs.iter().all(|arc| !arc.length().is_zero()),
        "segment has a degenerate arc"
    );
    ensure!(
        path.start == a && path.end == b && back.length() == path.length(),
        "segment endpoints or reversed length wrong"
    );
    for x in case.cuts(&[a, b]) {
        ensure!(
            path.contains(&x) == o.on_segment(&x, &a, &b) && back.contains(&x) == path.contains(&x),
            "membership of {} in [{}, {}] is wrong",
            case.show(&x),
            case.show(&a),
            case.show(&b)
        );
    }
    let d = path.length();
    for k in 0..=4 {
        let along = case.sk.point_along(&a, &b, d * Q::new(k, 4));
        ensure!(
            o.distance(&a, &along) == d * Q::new(k, 4) && o.on_segment(&along, &a, &b),
            "point_along at {k}/4 is off the segment"
        );
    }
    Verdict::Pass
}

fn segment_base_invariance(case: &mut Case) -> Verdict {
    let (a, b) = (case.point(), case.point());
    let path = case.sk.segment(&a, &b);
    for _ in 0..3 {
        let s = case.point();
        let view = case.view(s);
        let m = view.meet(&a, &b);
        for x in case.cuts(&[a, b, s]) {
            let in_view = view.leq(&m, &x) && (view.leq(&x, &a) || view.leq(&x, &b));
            ensure!(
                in_view == path.contains(&x),
                "base {}: membership of {} in [{}, {}] changes",
                case.show(&s),
                case.show(&x),
                case.show(&a),
                case.show(&b)
            );
        }
    }
    Verdict::Pass
}

fn reroot_base_smallest(case: &mut Case) -> Verdict {
    let t = case.point();
    let view = case.view(t);
    for x in case.cuts(&[t]) {
        ensure!(
            view.leq(&t, &x) && (x == t || !view.leq(&x, &t)),
            "base {} is not strictly below {}",
            case.show(&t),
            case.show(&x)
        );
    }
    let back = view
        .reroot(Point::Vertex(case.sk.root()))
        .expect("root is a point of the skeleton");
    ensure!(
        back.is_rooted_at_skeleton_root(),
        "reroot at the root lost the root"
    );
    let cuts = case.cuts(&[t]);
    for x in &cuts {
        for y in &cuts {
            ensure!(
                back.leq(x, y) == case.sk.root_leq(x, y),
                "rerooted order differs from root order on {}, {}",
                case.show(x),
                case.show(y)
            );
        }
    }
    Verdict::Pass
}

fn segment_total_order(case: &mut Case) -> Verdict {
    let (s, b) = (case.point(), case.point());
    let view = case.view(s);
    let below: Vec<Point> = case
        .cuts(&[s, b])
        .into_iter()
        .filter(|x| view.leq(x, &b))
        .collect();
    let a = case.pick(&below).expect("the base lies below b");
    let path = case.sk.segment(&a, &b);
    let on: Vec<Point> = case
        .cuts(&[s, a, b])
        .into_iter()
        .filter(|x| path.contains(x))
        .collect();
    for x in &on {
        for y in &on {
            ensure!(
                view.leq(x, y) || view.leq(y, x),
                "base {}: {} and {} on [{}, {}] are incomparable",
                case.show(&s),
                case.show(x),
                case.show(y),
                case.show(&a),
                case.show(&b)
            );
        }
    }
    Verdict::Pass
}

fn tangent_equivalence(case: &mut Case) -> Verdict {
    let t = case.point();
    let mut pts: Vec<Point> = case.cuts(&[t]);
    pts.extend((0..4).map(|_| case.point()));
    pts.retain(|x| *x != t);
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return Verdict::Vacuous;
    }
    let sk = case.sk.clone();
    let o = Oracle::new(&sk);
    let rel = |x: &Point, y: &Point| same_class(&sk, x, y, &t).expect("points avoid t");
    for x in &pts {
        ensure!(rel(x, x), "{} is not related to itself", case.show(x));
        for y in &pts {
            ensure!(
                rel(x, y) == rel(y, x) && rel(x, y) == o.same_class(x, y, &t),
                "at {}: relation on {}, {} is asymmetric or wrong",
                case.show(&t),
                case.show(x),
                case.show(y)
            );
        }
    }
    for _ in 0..200 {
        let (x, y, z) = (
            case.pick(&pts).unwrap(),
            case.pick(&pts).unwrap(),
            case.pick(&pts).unwrap(),
        );
        if rel(&x, &y) && rel(&y, &z) {
            ensure!(
                rel(&x, &z),
                "at {}: transitivity fails on {}, {}, {}",
                case.show(&t),
                case.show(&x),
                case.show(&y),
                case.show(&z)
            );
        }
    }
    Verdict::Pass
}

fn tangent_partition(case: &mut Case) -> Verdict {
    let t = case.point();
    let space = tangent_space(&case.sk, &t);
    let expected = match t {
        Point::Vertex(v) => case.sk.degree(v),
        Point::Edge { .. } => 2,
    };
    ensure!(
        space.classes.len() == expected,
        "{} has {} classes, expected {expected}",
        case.show(&t),
        space.classes.len()
    );
    let pts: Vec<Point> = case.cuts(&[t]).into_iter().filter(|x| *x != t).collect();
    if pts.is_empty() {
        return Verdict::Vacuous;
    }
    for x in &pts {
        let owners: Vec<_> = space
            .classes
            .iter()
            .filter(|c| c.contains(&case.sk, x))
            .collect();
        ensure!(
            owners.len() == 1,
            "{} lies in {} classes at {}",
            case.show(x),
            owners.len(),
            case.show(&t)
        );
        ensure!(
            space
                .classes
                .iter()
                .all(|c| c.contains(&case.sk, x) == c.contains_by_direction(&case.sk, x))
                && space.class_of(&case.sk, x) == Some(owners[0]),
            "direction-based membership of {} disagrees",
            case.show(x)
        );
    }
    Verdict::Pass
}

fn tangent_reroot_invariance(case: &mut Case) -> Verdict {
    let t = case.point();
    let (Some(a), Some(b)) = (case.point_avoiding(&[t]), case.point_avoiding(&[t])) else {
        return Verdict::Vacuous;
    };
    let related = same_class(&case.sk, &a, &b, &t).expect("points avoid t");
    for _ in 0..3 {
        let s = case.point();
        let view = case.view(s);
        let m = view.meet(&a, &b);
        let t_between = view.leq(&m, &t) && (view.leq(&t, &a) || view.leq(&t, &b));
        ensure!(
            related == !t_between,
            "base {}: {} ∼_{} {} changes",
            case.show(&s),
            case.show(&a),
            case.show(&t),
            case.show(&b)
        );
    }
    Verdict::Pass
}

fn tangent_class_equality(case: &mut Case) -> Verdict {
    let t = case.point();
    let (Some(a), Some(b)) = (case.point_avoiding(&[t]), case.point_avoiding(&[t])) else {
        return Verdict::Vacuous;
    };
    let ca = tangent_class(&case.sk, &a, &t).unwrap();
    let cb = tangent_class(&case.sk, &b, &t).unwrap();
    let related = same_class(&case.sk, &a, &b, &t).unwrap();
    let equal_sets = case
        .cuts(&[t, a, b])
        .iter()
        .all(|x| ca.contains(&case.sk, x) == cb.contains(&case.sk, x));
    ensure!(
        ca.same_set(&cb) == related && equal_sets == related,
        "at {}: classes of {} and {} (related: {related}, same_set: {}, equal over cuts: {equal_sets})",
        case.show(&t),
        case.show(&a),
        case.show(&b),
        ca.same_set(&cb)
    );
    Verdict::Pass
}

fn psi_parametrization(case: &mut Case) -> Verdict {
    let s = case.point();
    let param = Parametrization::new(case.view(s));
    let o = case.oracle();
    ensure!(
        param.psi(&s) == Q::one(),
        "Ψ(base) = {}",
        format_rational(&param.psi(&s))
    );
    let cuts = case.cuts(&[s]);
    for x in &cuts {
        ensure!(
            param.psi(x) == Q::one() + o.distance(&s, x),
            "Ψ({}) = {} is not 1 + distance to the base",
            case.show(x),
            format_rational(&param.psi(x))
        );
        for y in &cuts {
            if param.view().lt(x, y) {
                ensure!(
                    param.psi(x) < param.psi(y) && param.psi(y) - param.psi(x) == o.distance(x, y),
                    "Ψ is not increasing with slope 1 on {} ≺ {}",
                    case.show(x),
                    case.show(y)
                );
            }
        }
    }
    Verdict::Pass
}

fn metric_axioms(case: &mut Case) -> Verdict {
    let (s, a, b, c) = (case.point(), case.point(), case.point(), case.point());
    let param = Parametrization::new(case.view(s));
    let d = |x: &Point, y: &Point| param.d_psi(x, y);
    let pts = [a, b, c];
    for x in &pts {
        for y in &pts {
            ensure!(
                d(x, y).is_zero() == (x == y) && d(x, y) >= BigRational::zero(),
                "d({}, {}) = {} violates identity",
                case.show(x),
                case.show(y),
                format_big(&d(x, y))
            );
            ensure!(
                d(x, y) == d(y, x),
                "d is not symmetric on {}, {}",
                case.show(x),
                case.show(y)
            );
            for z in &pts {
                ensure!(
                    d(x, z) <= d(x, y) + d(y, z),
                    "triangle inequality fails on {}, {}, {}",
                    case.show(x),
                    case.show(y),
                    case.show(z)
                );
            }
        }
    }
    Verdict::Pass
}

fn metric_meet_additivity(case: &mut Case) -> Verdict {
    let (s, a, b) = (case.point(), case.point(), case.point());
    let view = case.view(s);
    let param = Parametrization::new(view.clone());
    let o = case.oracle();
    let m = view.meet(&a, &b);
    let d = param.d_psi(&a, &b);
    ensure!(
        d == param.d_psi(&a, &m) + param.d_psi(&m, &b),
        "d({}, {}) is not additive at the meet {}",
        case.show(&a),
        case.show(&b),
        case.show(&m)
    );
    // independent evaluation from brute-force distances
    let cuts = case.cuts(&[s, a, b]);
    let om = o
        .meet(&s, &a, &b, &cuts)
        .expect("the base is a lower bound");
    let inv = |x: &Point| BigRational::one() / to_big(&(Q::one() + o.distance(&s, x)));
    let expected = if a == b {
        BigRational::zero()
    } else {
        BigRational::from_integer(BigInt::from(2)) * inv(&om) - inv(&a) - inv(&b)
    };
    ensure!(
        d == expected,
        "d({}, {}) = {}, brute force gives {}",
        case.show(&a),
        case.show(&b),
        format_big(&d),
        format_big(&expected)
    );
    Verdict::Pass
}

fn metric_monotone_shrinking(case: &mut Case) -> Verdict {
    let (s, c) = (case.point(), case.point());
    let view = case.view(s);
    let cuts = case.cuts(&[s, c]);
    let below_c: Vec<Point> = cuts.iter().filter(|x| view.leq(x, &c)).copied().collect();
    let b = case.pick(&below_c).expect("base is below c");
    let below_b: Vec<Point> = below_c
        .iter()
        .filter(|x| view.leq(x, &b))
        .copied()
        .collect();
    let a = case.pick(&below_b).expect("base is below b");
    let param = Parametrization::new(view);
    ensure!(
        param.d_psi(&b, &c) <= param.d_psi(&a, &c),
        "d({b}, {c}) > d({a}, {c}) although {a} ⪯ {b} ⪯ {c}",
        a = case.show(&a),
        b = case.show(&b),
        c = case.show(&c)
    );
    Verdict::Pass
}

fn theorem_metric_coarser(case: &mut Case) -> Verdict {
    let s = case.point();
    let t = case.point();
    let Some(a) = case.point_avoiding(&[t]) else {
        return Verdict::Vacuous;
    };
    let atom = tangent_class(&case.sk, &a, &t).unwrap();
    let members: Vec<Point> = case
        .cuts(&[s, a, t])
        .into_iter()
        .filter(|x| atom.contains(&case.sk, x))
        .collect();
    let p = case.pick(&members).expect("a is a member");
    let param = Parametrization::new(case.view(s));
    let eps = match param.epsilon_witness(&p, &atom) {
        Ok(eps) => eps,
        Err(e) => {
            return Verdict::Fail(format!("epsilon_witness failed at {}: {e}", case.show(&p)))
        }
    };
    ensure!(
        eps > BigRational::zero(),
        "ε = {} is not positive",
        format_big(&eps)
    );
    for x in case.cuts(&[s, a, t, p]) {
        if param.d_psi(&p, &x) < eps {
            ensure!(
                atom.contains(&case.sk, &x),
                "{} is within ε = {} of {} but outside [{}]_{}",
                case.show(&x),
                format_big(&eps),
                case.show(&p),
                case.show(&a),
                case.show(&t)
            );
        }
    }
    Verdict::Pass
}

fn decider_agreement(case: &mut Case) -> Verdict {
    let s = case.point();
    let view = case.view(s);
    let expr = case.random_expr(&view, 3);
    let region = Region::new(view.clone(), expr);
    let family = chain_family(&region, &view);
    let inaccessible = match is_inaccessible_by_directed_joins(&region, &view, &family) {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(format!("generated chain rejected: {e}")),
    };
    let scott = case.scott_open(&region, &view);
    let upper = is_upper_set(&region, &view);
    ensure!(
        scott == (upper && inaccessible),
        "base {}: region {} scott-open {scott}, upper set {upper}, inaccessible {inaccessible}",
        case.show(&s),
        region.to_syntax()
    );
    Verdict::Pass
}

fn lemma_inaccessible(case: &mut Case) -> Verdict {
    let t = case.point();
    let Some(a) = case.point_avoiding(&[t]) else {
        return Verdict::Vacuous;
    };
    for base in [case.point(), t, a] {
        let view = case.view(base);
        let region = Region::class(&view, a, t).unwrap();
        let family = chain_family(&region, &view);
        ensure!(
            is_inaccessible_by_directed_joins(&region, &view, &family) == Ok(true),
            "base {}: {} is accessible by a directed join",
            case.show(&base),
            region.to_syntax()
        );
    }
    Verdict::Pass
}

fn lemma_upper_set(case: &mut Case) -> Verdict {
    let t = case.point();
    let Some(a) = case.point_avoiding(&[t]) else {
        return Verdict::Vacuous;
    };
    let at_t = Region::class(&case.view(t), a, t).unwrap();
    ensure!(
        is_upper_set(&at_t, at_t.view()),
        "{} is not an upper set under its own anchor",
        at_t.to_syntax()
    );
    let bases = [case.point(), case.point(), a, t];
    let o = case.oracle();
    for r in bases {
        let view = case.view(r);
        let region = Region::class(&view, a, t).unwrap();
        let decided = is_upper_set(&region, &view);
        let cuts = region.cut_points_with(&[r]);
        let brute = cuts.iter().all(|x| {
            !region.member(x) || cuts.iter().all(|y| !o.leq(&r, x, y) || region.member(y))
        });
        let predicted = view.lt(&t, &a);
        ensure!(
            decided == brute && decided == predicted,
            "base {}: {} upper set: decider {decided}, brute force {brute}, t ≺ a {predicted}",
            case.show(&r),
            region.to_syntax()
        );
    }
    Verdict::Pass
}

fn prop_scott_weak_open(case: &mut Case) -> Verdict {
    let s = case.point();
    let view = case.view(s);
    let (p, q) = (case.point(), case.point());
    let mut regions = vec![
        Region::strict_up(&view, p),
        Region::up(&view, s),
        Region::strict_up(&view, p)
            .union(&Region::strict_up(&view, q))
            .expect("same view"),
        Region::up(&view, s)
            .union(&Region::strict_up(&view, p))
            .expect("same view"),
    ];
    let t = case.point();
    if let Some(a) = case.point_avoiding(&[t]) {
        regions.push(Region::class(&case.view(t), a, t).unwrap());
    }
    for region in &regions {
        let rv = region.view();
        ensure!(
            case.scott_open(region, rv),
            "generated region {} under base {} is not Scott-open",
            region.to_syntax(),
            case.show(&rv.base())
        );
        let witnesses = match weak_open_witnesses(region, rv) {
            Ok(w) => w,
            Err(e) => {
                return Verdict::Fail(format!(
                    "no weak-open witnesses in {}: {e}",
                    region.to_syntax()
                ))
            }
        };
        let members = region
            .cut_points_with(&[])
            .into_iter()
            .filter(|a| *a != rv.base() && region.member(a))
            .count();
        ensure!(
            witnesses.len() == members,
            "{} witnesses for {members} members of {}",
            witnesses.len(),
            region.to_syntax()
        );
        for (a, w) in witnesses {
            let class = Region::class(rv, a, w).expect("witness differs from a");
            ensure!(
                rv.lt(&w, &a) && region.member(&w) && is_subset(&class, region),
                "witness {} for {} in {} is invalid",
                case.show(&w),
                case.show(&a),
                region.to_syntax()
            );
        }
    }
    Verdict::Pass
}

fn theorem_strict_coarseness(case: &mut Case) -> Verdict {
    if case.sk.edge_count() < 2 {
        return Verdict::Vacuous;
    }
    let root = Point::Vertex(case.sk.root());
    let view = OrderView::rooted(case.sk.clone());
    for t in case.sk.vertex_points() {
        if t == root {
            continue;
        }
        let region = Region::class(&view, root, t).unwrap();
        ensure!(
            matches!(region.expr(), Expr::Atom(Atom::Class(c)) if c.anchor == t),
            "{} is not a subbasic class region",
            region.to_syntax()
        );
        let Some((x, y)) = upper_set_violation(&region, &view) else {
            return Verdict::Fail(format!("{} is an upper set", region.to_syntax()));
        };
        ensure!(
            region.member(&x) && view.leq(&x, &y) && !region.member(&y),
            "violation ({}, {}) for {} does not hold up",
            case.show(&x),
            case.show(&y),
            region.to_syntax()
        );
        ensure!(
            !is_upper_set(&region, &view) && !case.scott_open(&region, &view),
            "{} is Scott-open under the root",
            region.to_syntax()
        );
    }
    Verdict::Pass
}

fn theorem_generated_topology(case: &mut Case) -> Verdict {
    let t = case.point();
    let Some(a) = case.point_avoiding(&[t]) else {
        return Verdict::Vacuous;
    };
    let view = case.view(t);
    let region = Region::class(&view, a, t).unwrap();
    ensure!(
        case.scott_open(&region, &view),
        "{} is not Scott-open under base {}",
        region.to_syntax(),
        case.show(&t)
    );
    let family = chain_family(&region, &view);
    ensure!(
        is_upper_set(&region, &view)
            && is_inaccessible_by_directed_joins(&region, &view, &family) == Ok(true),
        "{} fails the definitional Scott check under base {}",
        region.to_syntax(),
        case.show(&t)
    );
    Verdict::Pass
}

fn remark_hausdorff(case: &mut Case) -> Verdict {
    let p = case.point();
    let Some(q) = case.point_avoiding(&[p]) else {
        return Verdict::Vacuous;
    };
    let pair = match hausdorff_witness(&case.sk, &p, &q) {
        Ok(pair) => pair,
        Err(e) => return Verdict::Fail(format!("no witness: {e}")),
    };
    ensure!(
        separates(&pair, &p, &q),
        "{} and {} do not separate {} and {}",
        pair.0.to_syntax(),
        pair.1.to_syntax(),
        case.show(&p),
        case.show(&q)
    );
    let o = case.oracle();
    let half = o.distance(&p, &q) / Q::from_integer(2);
    let m = case.sk.point_along(&p, &q, half);
    ensure!(
        o.distance(&p, &m) == half && o.distance(&m, &q) == half,
        "{} is not the midpoint",
        case.show(&m)
    );
    for x in case.cuts(&[p, q, m]) {
        let in_p = x != m && o.same_class(&x, &p, &m);
        let in_q = x != m && o.same_class(&x, &q, &m);
        ensure!(
            pair.0.member(&x) == in_p && pair.1.member(&x) == in_q && !(in_p && in_q),
            "membership of {} disagrees with brute force",
            case.show(&x)
        );
    }
    Verdict::Pass
}

fn remark_scott_views_differ(case: &mut Case) -> Verdict {
    if case.sk.vertex_count() < 2 {
        return Verdict::Vacuous;
    }
    let t = if case.rng.random_bool(0.5) {
        case.vertex()
    } else {
        case.point()
    };
    let Some(s) = (0..32)
        .map(|_| {
            if case.rng.random_bool(0.5) {
                case.vertex()
            } else {
                case.point()
            }
        })
        .find(|s| *s != t)
    else {
        return Verdict::Vacuous;
    };
    let Some(a) = scott_views_differ_witness(&case.sk, &t, &s) else {
        return Verdict::Fail(format!(
            "no region separates the Scott topologies at {} and {}",
            case.show(&t),
            case.show(&s)
        ));
    };
    let view_t = case.view(t);
    let view_s = case.view(s);
    let region = Region::class(&view_t, a, t).unwrap();
    let under_s = Region::class(&view_s, a, t).unwrap();
    ensure!(
        same_class(&case.sk, &a, &s, &t) == Ok(true)
            && case.scott_open(&region, &view_t)
            && !is_upper_set(&under_s, &view_s),
        "witness {} for bases {}, {} does not hold up",
        case.show(&a),
        case.show(&t),
        case.show(&s)
    );
    Verdict::Pass
}
