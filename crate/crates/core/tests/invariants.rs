//! Property tests with shrinking. Trees and points are drawn from proptest
//! strategies, independently of the harness generator.

use std::sync::Arc;

use nmtree::harness::oracle::Oracle;
use nmtree::metric::Parametrization;
use nmtree::rational::Q;
use nmtree::region::{Atom, Expr, Region};
use nmtree::tangent::{same_class, tangent_class, tangent_space};
use nmtree::topology::{
    chain_family, is_inaccessible_by_directed_joins, is_scott_open, is_upper_set,
};
use nmtree::tree::{parse_tree, OrderView, Point, TreeSkeleton};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::Index;

#[derive(Debug, Clone)]
struct Shape {
    parents: Vec<(Index, i128, i128)>,
    root: Index,
}

fn shape() -> impl Strategy<Value = Shape> {
    (
        prop::collection::vec((any::<Index>(), 1i128..=48, 1i128..=12), 1..9),
        any::<Index>(),
    )
        .prop_map(|(parents, root)| Shape { parents, root })
}

fn build(shape: &Shape) -> Arc<TreeSkeleton> {
    let n = shape.parents.len() + 1;
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let edges: Vec<_> = shape
        .parents
        .iter()
        .enumerate()
        .map(|(i, (parent, num, den))| {
            (
                names[parent.index(i + 1)].clone(),
                names[i + 1].clone(),
                Q::new(*num, *den),
            )
        })
        .collect();
    let root = names[shape.root.index(n)].clone();
    Arc::new(TreeSkeleton::new(&root, names, edges).unwrap())
}

/// `(selector, k, m)` picks a vertex or the point at fraction `k/m` of an edge.
type RawPt = (Index, bool, i128, i128);

fn raw_point() -> impl Strategy<Value = RawPt> {
    (any::<Index>(), any::<bool>(), 1i128..8, 2i128..9)
}

fn realize(t: &TreeSkeleton, (sel, on_edge, k, m): RawPt) -> Point {
    if on_edge {
        let edge = t.edge_ids().nth(sel.index(t.edge_count())).unwrap();
        let offset = t.edge(edge).length * Q::new(k % m, m);
        t.point_on_edge(edge, offset)
    } else {
        t.vertex_points()[sel.index(t.vertex_count())]
    }
}

fn setup(s: &Shape, raws: &[RawPt]) -> (Arc<TreeSkeleton>, Vec<Point>) {
    let t = build(s);
    let pts = raws.iter().map(|r| realize(&t, *r)).collect();
    (t, pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn serialization_round_trips(s in shape(), raws in prop::collection::vec(raw_point(), 4)) {
        let (t, pts) = setup(&s, &raws);
        let again = parse_tree(&t.to_string()).unwrap();
        prop_assert_eq!(&again, &*t);
        for x in pts {
            prop_assert_eq!(t.parse_point(&t.display_point(&x)).unwrap(), x);
        }
    }

    #[test]
    fn meet_is_brute_force_glb(s in shape(), raws in prop::collection::vec(raw_point(), 3)) {
        let (t, pts) = setup(&s, &raws);
        let (base, a, b) = (pts[0], pts[1], pts[2]);
        let view = OrderView::new(t.clone(), base).unwrap();
        let o = Oracle::new(&t);
        let cuts = t.cut_points(&pts);
        prop_assert_eq!(Some(view.meet(&a, &b)), o.meet(&base, &a, &b, &cuts));
        for x in &cuts {
            prop_assert_eq!(view.leq(x, &a), o.leq(&base, x, &a));
        }
    }

    #[test]
    fn indexed_meet_matches(s in shape(), raws in prop::collection::vec(raw_point(), 2)) {
        let (t, pts) = setup(&s, &raws);
        let indexed = TreeSkeleton::clone(&t).with_lca_index();
        prop_assert_eq!(indexed.root_meet(&pts[0], &pts[1]), t.root_meet_by_climbing(&pts[0], &pts[1]));
    }

    #[test]
    fn segment_triangle_and_base_invariance(
        s in shape(),
        raws in prop::collection::vec(raw_point(), 4),
    ) {
        let (t, pts) = setup(&s, &raws);
        let (a, b, c, base) = (pts[0], pts[1], pts[2], pts[3]);
        let view = OrderView::new(t.clone(), base).unwrap();
        let (ac, ab, bc) = (t.segment(&a, &c), t.segment(&a, &b), t.segment(&b, &c));
        let m = view.meet(&a, &c);
        for x in t.cut_points(&pts) {
            prop_assert!(!ac.contains(&x) || ab.contains(&x) || bc.contains(&x));
            let via_view = view.leq(&m, &x) && (view.leq(&x, &a) || view.leq(&x, &c));
            prop_assert_eq!(via_view, ac.contains(&x));
        }
    }

    #[test]
    fn psi_is_affine_on_segments(s in shape(), raws in prop::collection::vec(raw_point(), 2)) {
        let (t, pts) = setup(&s, &raws);
        let view = OrderView::new(t.clone(), pts[0]).unwrap();
        let param = Parametrization::new(view.clone());
        let b = pts[1];
        for x in t.cut_points(&pts) {
            if view.leq(&x, &b) {
                prop_assert_eq!(param.psi(&b) - param.psi(&x), t.distance(&x, &b));
            }
        }
    }

    #[test]
    fn tangent_classes_partition(s in shape(), raws in prop::collection::vec(raw_point(), 1)) {
        let (t, pts) = setup(&s, &raws);
        let anchor = pts[0];
        let space = tangent_space(&t, &anchor);
        for x in t.cut_points(&pts) {
            let owners = space.classes.iter().filter(|c| c.contains(&t, &x)).count();
            prop_assert_eq!(owners, usize::from(x != anchor));
        }
    }

    #[test]
    fn metric_axioms(s in shape(), raws in prop::collection::vec(raw_point(), 4)) {
        let (t, pts) = setup(&s, &raws);
        let view = OrderView::new(t.clone(), pts[0]).unwrap();
        let param = Parametrization::new(view.clone());
        let (a, b, c) = (pts[1], pts[2], pts[3]);
        let d = |x: &Point, y: &Point| param.d_psi(x, y);
        prop_assert_eq!(d(&a, &b).is_zero(), a == b);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        let m = view.meet(&a, &b);
        prop_assert_eq!(d(&a, &b), d(&a, &m) + d(&m, &b));
        prop_assert!(d(&a, &b) >= BigRational::zero());
    }

    #[test]
    fn upper_set_characterization(s in shape(), raws in prop::collection::vec(raw_point(), 3)) {
        let (t, pts) = setup(&s, &raws);
        let (a, anchor, r) = (pts[0], pts[1], pts[2]);
        prop_assume!(a != anchor);
        let view = OrderView::new(t.clone(), r).unwrap();
        let region = Region::class(&view, a, anchor).unwrap();
        prop_assert_eq!(is_upper_set(&region, &view), view.lt(&anchor, &a));
        let own = OrderView::new(t.clone(), anchor).unwrap();
        let region = Region::class(&own, a, anchor).unwrap();
        prop_assert!(is_scott_open(&region, &own));
    }

    #[test]
    fn deciders_agree(
        s in shape(),
        raws in prop::collection::vec(raw_point(), 5),
        kinds in prop::collection::vec(0u8..5, 2),
        op in 0u8..3,
    ) {
        let (t, pts) = setup(&s, &raws);
        let view = OrderView::new(t.clone(), pts[0]).unwrap();
        let atom = |kind: u8, x: Point, y: Point| -> Atom {
            match kind {
                0 if x != y => Atom::Class(tangent_class(&t, &x, &y).unwrap()),
                1 => Atom::Up(x),
                2 => Atom::StrictUp(x),
                3 => Atom::Singleton(x),
                _ => Atom::Whole,
            }
        };
        let l = Expr::Atom(atom(kinds[0], pts[1], pts[2]));
        let r = Expr::Atom(atom(kinds[1], pts[3], pts[4]));
        let expr = match op {
            0 => Expr::Union(Box::new(l), Box::new(r)),
            1 => Expr::Intersection(Box::new(l), Box::new(r)),
            _ => Expr::Complement(Box::new(l)),
        };
        let region = Region::new(view.clone(), expr);
        let family = chain_family(&region, &view);
        let inaccessible = is_inaccessible_by_directed_joins(&region, &view, &family).unwrap();
        prop_assert_eq!(
            is_scott_open(&region, &view),
            is_upper_set(&region, &view) && inaccessible
        );
        let reparsed = Region::parse(&view, &region.to_syntax()).unwrap();
        prop_assert_eq!(reparsed.expr(), region.expr());
    }

    #[test]
    fn same_class_rejects_anchor(s in shape(), raws in prop::collection::vec(raw_point(), 2)) {
        let (t, pts) = setup(&s, &raws);
        prop_assert!(same_class(&t, &pts[0], &pts[1], &pts[0]).is_err());
    }
}
