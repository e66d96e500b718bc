//! Compute functions for two robots with two-colour lights.
//!
//! A protocol maps what a robot sees, expressed in its own frame with itself
//! at the origin, to its next colour and an optional destination.

use std::fmt;

use geometry::{format_scalar, parse_scalar, Point, Scalar};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub const ALL: [Color; 2] = [Color::White, Color::Black];

    pub fn letter(self) -> char {
        match self {
            Color::White => 'W',
            Color::Black => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'W' | 'w' => Some(Color::White),
            'B' | 'b' => Some(Color::Black),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "White",
            Color::Black => "Black",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub my_color: Color,
    pub other_color: Color,
    pub other_pos_local: Point,
    pub gathered: bool,
}

impl Snapshot {
    /// The gathered flag is derived from the position, never supplied.
    pub fn new(my_color: Color, other_color: Color, other_pos_local: Point) -> Self {
        let gathered = other_pos_local.is_origin();
        Snapshot { my_color, other_color, other_pos_local, gathered }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComputeOutcome {
    pub new_color: Color,
    pub target_local: Option<Point>,
}

impl ComputeOutcome {
    fn stay(new_color: Color) -> Self {
        ComputeOutcome { new_color, target_local: None }
    }

    fn go(new_color: Color, target: Point) -> Self {
        ComputeOutcome { new_color, target_local: Some(target) }
    }
}

fn half() -> Scalar {
    Scalar::new(1.into(), 2.into())
}

/// Algorithm with the gathered guard: a White robot that already shares
/// the other robot's position does nothing.
pub fn compute_ours(s: &Snapshot) -> ComputeOutcome {
    use Color::*;
    match (s.my_color, s.other_color) {
        (White, _) if s.gathered => ComputeOutcome::stay(White),
        (White, White) => ComputeOutcome::go(Black, s.other_pos_local.scale(&half())),
        (White, Black) => ComputeOutcome::go(White, s.other_pos_local.clone()),
        (Black, Black) => ComputeOutcome::stay(White),
        (Black, White) => ComputeOutcome::stay(Black),
    }
}

/// Viglietta's two-colour rule set, which has no gathered guard.
pub fn compute_viglietta(s: &Snapshot) -> ComputeOutcome {
    use Color::*;
    match (s.my_color, s.other_color) {
        (White, White) => ComputeOutcome::go(Black, s.other_pos_local.scale(&half())),
        (White, Black) => ComputeOutcome::go(White, s.other_pos_local.clone()),
        (Black, Black) => ComputeOutcome::stay(White),
        (Black, White) => ComputeOutcome::stay(Black),
    }
}

/// Pair order used for tables and selectors: BB, BW, WB, WW (mine first).
pub const PAIRS: [(Color, Color); 4] = [
    (Color::Black, Color::Black),
    (Color::Black, Color::White),
    (Color::White, Color::Black),
    (Color::White, Color::White),
];

fn pair_index(me: Color, other: Color) -> usize {
    PAIRS.iter().position(|p| *p == (me, other)).expect("all pairs listed")
}

/// A protocol whose destination is a fixed fraction of the way to the other
/// robot and whose colour update reads only the colour pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLTable {
    lambda: [Scalar; 4],
    next: [Color; 4],
}

impl ClassLTable {
    pub fn new(lambda: [Scalar; 4], next: [Color; 4]) -> Result<Self, ProtocolError> {
        for l in &lambda {
            if *l < Scalar::zero() || *l > Scalar::one() {
                return Err(ProtocolError::LambdaRange(format_scalar(l)));
            }
        }
        Ok(ClassLTable { lambda, next })
    }

    pub fn viglietta() -> Self {
        use Color::*;
        let z = Scalar::zero();
        ClassLTable::new([z.clone(), z, Scalar::one(), half()], [White, Black, White, Black]).expect("valid table")
    }

    pub fn lambda(&self, me: Color, other: Color) -> &Scalar {
        &self.lambda[pair_index(me, other)]
    }

    pub fn next_color(&self, me: Color, other: Color) -> Color {
        self.next[pair_index(me, other)]
    }

    pub fn compute(&self, s: &Snapshot) -> ComputeOutcome {
        let l = self.lambda(s.my_color, s.other_color);
        let target = (!l.is_zero()).then(|| s.other_pos_local.scale(l));
        ComputeOutcome { new_color: self.next_color(s.my_color, s.other_color), target_local: target }
    }

    /// Parses `l_bb,l_bw,l_wb,l_ww;cccc`, colours as W/B letters in pair order.
    pub fn parse(body: &str) -> Result<Self, ProtocolError> {
        let bad = || ProtocolError::BadSelector(format!("classl:{body}"));
        let (ls, cs) = body.split_once(';').ok_or_else(bad)?;
        let lambdas: Vec<Scalar> = ls.split(',').map(parse_scalar).collect::<Result<_, _>>().map_err(|_| bad())?;
        let colors: Vec<Color> = cs.trim().chars().map(Color::from_letter).collect::<Option<_>>().ok_or_else(bad)?;
        let lambda: [Scalar; 4] = lambdas.try_into().map_err(|_| bad())?;
        let next: [Color; 4] = colors.try_into().map_err(|_| bad())?;
        ClassLTable::new(lambda, next)
    }

    pub fn selector(&self) -> String {
        let ls: Vec<String> = self.lambda.iter().map(short_scalar).collect();
        let cs: String = self.next.iter().map(|c| c.letter()).collect();
        format!("classl:{};{}", ls.join(","), cs)
    }
}

fn short_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProtocolError {
    #[error("unknown protocol selector {0:?}")]
    BadSelector(String),
    #[error("lambda {0} is outside [0, 1]")]
    LambdaRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Protocol {
    Ours,
    Viglietta,
    ClassL(ClassLTable),
}

impl Protocol {
    pub fn parse(selector: &str) -> Result<Self, ProtocolError> {
        match selector.trim() {
            "ours" => Ok(Protocol::Ours),
            "viglietta2" => Ok(Protocol::Viglietta),
            s => match s.strip_prefix("classl:") {
                Some(body) => ClassLTable::parse(body).map(Protocol::ClassL),
                None => Err(ProtocolError::BadSelector(s.to_string())),
            },
        }
    }

    pub fn selector(&self) -> String {
        match self {
            Protocol::Ours => "ours".into(),
            Protocol::Viglietta => "viglietta2".into(),
            Protocol::ClassL(t) => t.selector(),
        }
    }

    pub fn compute(&self, s: &Snapshot) -> ComputeOutcome {
        match self {
            Protocol::Ours => compute_ours(s),
            Protocol::Viglietta => compute_viglietta(s),
            Protocol::ClassL(t) => t.compute(s),
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.selector())
    }
}
