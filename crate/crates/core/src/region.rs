//! Finite boolean combinations of atomic regions.
//!
//! Atoms are tangent classes, up-sets, strict up-sets, singletons, the
//! whole tree and the empty set. Order-dependent atoms are interpreted in
//! the [`OrderView`] the region is bound to. Membership of every region is
//! constant on each open sub-arc of the cut decomposition induced by its
//! anchor points and the view base, which is what makes all quantified
//! checks below exact.
//!
//! Textual syntax: `class(A,T)`, `up(P)`, `strictup(P)`, `point(P)`,
//! `whole`, `empty`, combined with `!` (tightest), `&`, `|` and
//! parentheses.

use std::fmt::Write as _;

use thiserror::Error;

use crate::tangent::{tangent_class, TangentClassAtom, TangentError};
use crate::tree::{OrderView, Point, PointError, TreeSkeleton};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("regions are bound to different order views")]
    ViewMismatch,
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error(transparent)]
    Point(#[from] PointError),
    #[error("region syntax: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Class(TangentClassAtom),
    Up(Point),
    StrictUp(Point),
    Singleton(Point),
    Whole,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Union(Box<Expr>, Box<Expr>),
    Intersection(Box<Expr>, Box<Expr>),
    Complement(Box<Expr>),
}

impl Expr {
    fn anchors(&self, out: &mut Vec<Point>) {
        match self {
            Expr::Atom(atom) => match atom {
                Atom::Class(c) => {
                    out.push(c.anchor);
                    out.push(c.representative);
                }
                Atom::Up(p) | Atom::StrictUp(p) | Atom::Singleton(p) => out.push(*p),
                Atom::Whole | Atom::Empty => {}
            },
            Expr::Union(a, b) | Expr::Intersection(a, b) => {
                a.anchors(out);
                b.anchors(out);
            }
            Expr::Complement(a) => a.anchors(out),
        }
    }

    fn size(&self) -> usize {
        match self {
            Expr::Atom(_) => 1,
            Expr::Union(a, b) | Expr::Intersection(a, b) => 1 + a.size() + b.size(),
            Expr::Complement(a) => 1 + a.size(),
        }
    }
}

/// A region expression bound to one order view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    view: OrderView,
    expr: Expr,
}

impl Region {
    pub fn new(view: OrderView, expr: Expr) -> Self {
        Region { view, expr }
    }

    pub fn atom(view: &OrderView, atom: Atom) -> Self {
        Region::new(view.clone(), Expr::Atom(atom))
    }

    pub fn whole(view: &OrderView) -> Self {
        Region::atom(view, Atom::Whole)
    }

    pub fn empty(view: &OrderView) -> Self {
        Region::atom(view, Atom::Empty)
    }

    pub fn up(view: &OrderView, p: Point) -> Self {
        Region::atom(view, Atom::Up(p))
    }

    pub fn strict_up(view: &OrderView, p: Point) -> Self {
        Region::atom(view, Atom::StrictUp(p))
    }

    pub fn singleton(view: &OrderView, p: Point) -> Self {
        Region::atom(view, Atom::Singleton(p))
    }

    /// The tangent class `[a]_t`.
    pub fn class(view: &OrderView, a: Point, t: Point) -> Result<Self, RegionError> {
        let atom = tangent_class(view.skeleton(), &a, &t)?;
        Ok(Region::atom(view, Atom::Class(atom)))
    }

    pub fn from_class(view: &OrderView, atom: TangentClassAtom) -> Self {
        Region::atom(view, Atom::Class(atom))
    }

    fn combine(
        &self,
        other: &Region,
        f: impl FnOnce(Box<Expr>, Box<Expr>) -> Expr,
    ) -> Result<Region, RegionError> {
        if self.view != other.view {
            return Err(RegionError::ViewMismatch);
        }
        Ok(Region::new(
            self.view.clone(),
            f(Box::new(self.expr.clone()), Box::new(other.expr.clone())),
        ))
    }

    pub fn union(&self, other: &Region) -> Result<Region, RegionError> {
        self.combine(other, Expr::Union)
    }

    pub fn intersection(&self, other: &Region) -> Result<Region, RegionError> {
        self.combine(other, Expr::Intersection)
    }

    pub fn complement(&self) -> Region {
        Region::new(
            self.view.clone(),
            Expr::Complement(Box::new(self.expr.clone())),
        )
    }

    pub fn view(&self) -> &OrderView {
        &self.view
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn skeleton(&self) -> &TreeSkeleton {
        self.view.skeleton()
    }

    pub fn size(&self) -> usize {
        self.expr.size()
    }

    pub fn member(&self, x: &Point) -> bool {
        self.eval(&self.expr, x)
    }

    fn eval(&self, expr: &Expr, x: &Point) -> bool {
        match expr {
            Expr::Atom(atom) => match atom {
                Atom::Class(c) => c.contains(self.skeleton(), x),
                Atom::Up(p) => self.view.leq(p, x),
                Atom::StrictUp(p) => self.view.lt(p, x),
                Atom::Singleton(p) => p == x,
                Atom::Whole => true,
                Atom::Empty => false,
            },
            Expr::Union(a, b) => self.eval(a, x) || self.eval(b, x),
            Expr::Intersection(a, b) => self.eval(a, x) && self.eval(b, x),
            Expr::Complement(a) => !self.eval(a, x),
        }
    }

    /// Anchor and representative points mentioned by the expression.
    pub fn anchors(&self) -> Vec<Point> {
        let mut out = Vec::new();
        self.expr.anchors(&mut out);
        out.sort();
        out.dedup();
        out
    }

    /// The exactness basis for this region: vertices, anchors and the
    /// midpoints of the sub-arcs between them.
    pub fn cut_points(&self) -> Vec<Point> {
        self.skeleton().cut_points(&self.anchors())
    }

    /// Cut decomposition refined by additional points (view bases, query
    /// points).
    pub fn cut_points_with(&self, extra: &[Point]) -> Vec<Point> {
        let mut anchors = self.anchors();
        anchors.extend_from_slice(extra);
        anchors.push(self.view.base());
        self.skeleton().cut_points(&anchors)
    }

    /// Renders in the textual region syntax.
    pub fn to_syntax(&self) -> String {
        let mut out = String::new();
        write_expr(self.skeleton(), &self.expr, &mut out);
        out
    }

    /// Parses the textual syntax against `view`.
    pub fn parse(view: &OrderView, text: &str) -> Result<Region, RegionError> {
        let tokens = tokenize(text)?;
        let mut parser = ExprParser {
            view,
            tokens,
            pos: 0,
        };
        let expr = parser.union()?;
        if parser.pos != parser.tokens.len() {
            return Err(RegionError::Syntax(format!(
                "unexpected `{}`",
                parser.tokens[parser.pos]
            )));
        }
        Ok(Region::new(view.clone(), expr))
    }
}

/// `a ⊆ b`, decided over the joint cut decomposition.
pub fn is_subset(a: &Region, b: &Region) -> bool {
    joint_cut_points(a, b)
        .iter()
        .all(|x| !a.member(x) || b.member(x))
}

/// `a ∩ b = ∅`, decided over the joint cut decomposition.
pub fn is_disjoint(a: &Region, b: &Region) -> bool {
    joint_cut_points(a, b)
        .iter()
        .all(|x| !(a.member(x) && b.member(x)))
}

fn joint_cut_points(a: &Region, b: &Region) -> Vec<Point> {
    let mut extra = b.anchors();
    extra.push(b.view.base());
    a.cut_points_with(&extra)
}

fn write_expr(t: &TreeSkeleton, expr: &Expr, out: &mut String) {
    match expr {
        Expr::Atom(atom) => match atom {
            Atom::Class(c) => {
                let _ = write!(
                    out,
                    "class({},{})",
                    t.display_point(&c.representative),
                    t.display_point(&c.anchor)
                );
            }
            Atom::Up(p) => {
                let _ = write!(out, "up({})", t.display_point(p));
            }
            Atom::StrictUp(p) => {
                let _ = write!(out, "strictup({})", t.display_point(p));
            }
            Atom::Singleton(p) => {
                let _ = write!(out, "point({})", t.display_point(p));
            }
            Atom::Whole => out.push_str("whole"),
            Atom::Empty => out.push_str("empty"),
        },
        Expr::Union(a, b) | Expr::Intersection(a, b) => {
            let op = if matches!(expr, Expr::Union(..)) {
                '|'
            } else {
                '&'
            };
            out.push('(');
            write_expr(t, a, out);
            let _ = write!(out, " {op} ");
            write_expr(t, b, out);
            out.push(')');
        }
        Expr::Complement(a) => {
            out.push('!');
            write_expr(t, a, out);
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<String>, RegionError> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for c in text.chars() {
        if "()|&!,".contains(c) || c.is_whitespace() {
            if !word.is_empty() {
                tokens.push(std::mem::take(&mut word));
            }
            if !c.is_whitespace() {
                tokens.push(c.to_string());
            }
        } else {
            word.push(c);
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    if tokens.is_empty() {
        return Err(RegionError::Syntax("empty expression".into()));
    }
    Ok(tokens)
}

struct ExprParser<'a> {
    view: &'a OrderView,
    tokens: Vec<String>,
    pos: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn expect(&mut self, want: &str) -> Result<(), RegionError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(RegionError::Syntax(format!(
                "expected `{want}`, found {}",
                self.peek()
                    .map_or("end of input".to_string(), |t| format!("`{t}`"))
            )))
        }
    }

    fn point(&mut self) -> Result<Point, RegionError> {
        let tok = self
            .peek()
            .ok_or_else(|| RegionError::Syntax("expected a point".into()))?
            .to_string();
        self.pos += 1;
        Ok(self.view.skeleton().parse_point(&tok)?)
    }

    fn union(&mut self) -> Result<Expr, RegionError> {
        let mut lhs = self.intersection()?;
        while self.peek() == Some("|") {
            self.pos += 1;
            let rhs = self.intersection()?;
            lhs = Expr::Union(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn intersection(&mut self) -> Result<Expr, RegionError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some("&") {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Intersection(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, RegionError> {
        match self.peek() {
            Some("!") => {
                self.pos += 1;
                Ok(Expr::Complement(Box::new(self.unary()?)))
            }
            Some("(") => {
                self.pos += 1;
                let inner = self.union()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some(word) => {
                let word = word.to_string();
                self.pos += 1;
                let atom = match word.as_str() {
                    "whole" => Atom::Whole,
                    "empty" => Atom::Empty,
                    "up" | "strictup" | "point" => {
                        self.expect("(")?;
                        let p = self.point()?;
                        self.expect(")")?;
                        match word.as_str() {
                            "up" => Atom::Up(p),
                            "strictup" => Atom::StrictUp(p),
                            _ => Atom::Singleton(p),
                        }
                    }
                    "class" => {
                        self.expect("(")?;
                        let a = self.point()?;
                        self.expect(",")?;
                        let t = self.point()?;
                        self.expect(")")?;
                        Atom::Class(tangent_class(self.view.skeleton(), &a, &t)?)
                    }
                    other => {
                        return Err(RegionError::Syntax(format!("unknown atom `{other}`")));
                    }
                };
                Ok(Expr::Atom(atom))
            }
            None => Err(RegionError::Syntax("unexpected end of input".into())),
        }
    }
}
