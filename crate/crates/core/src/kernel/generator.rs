//! Generators of the expression ring and their fixed total order.
//!
//! Ordering (derived, and relied upon for canonical monomial order):
//! independent variables `t < x < y`, then jet coordinates ordered by
//! dependent symbol `u < s < q < p` and then by multi-index `(t, x, y)`
//! lexicographically, then parameters `lambda < mu < eps`, then arbitrary
//! functions by `(id, derivative order)`.

use core::fmt;
use core::ops::Add;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    T,
    X,
    Y,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::T, Direction::X, Direction::Y];

    pub fn name(self) -> char {
        match self {
            Direction::T => 't',
            Direction::X => 'x',
            Direction::Y => 'y',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Dependent variables: the stream function `u`, the pseudopotential `s`,
/// and the tangent/cotangent fibre variables `q`, `p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dep {
    U,
    S,
    Q,
    P,
}

impl Dep {
    pub const ALL: [Dep; 4] = [Dep::U, Dep::S, Dep::Q, Dep::P];

    pub fn name(self) -> char {
        match self {
            Dep::U => 'u',
            Dep::S => 's',
            Dep::Q => 'q',
            Dep::P => 'p',
        }
    }
}

/// Derivative orders in `(t, x, y)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    pub t: u8,
    pub x: u8,
    pub y: u8,
}

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex { t: 0, x: 0, y: 0 };

    pub const fn new(t: u8, x: u8, y: u8) -> Self {
        MultiIndex { t, x, y }
    }

    pub fn unit(d: Direction) -> Self {
        MultiIndex::ZERO.bump(d)
    }

    /// `|σ|`
    pub fn order(self) -> u32 {
        self.t as u32 + self.x as u32 + self.y as u32
    }

    pub fn get(self, d: Direction) -> u8 {
        match d {
            Direction::T => self.t,
            Direction::X => self.x,
            Direction::Y => self.y,
        }
    }

    pub fn bump(mut self, d: Direction) -> Self {
        match d {
            Direction::T => self.t += 1,
            Direction::X => self.x += 1,
            Direction::Y => self.y += 1,
        }
        self
    }

    /// `self − d`, if the component is positive.
    pub fn lower(mut self, d: Direction) -> Option<Self> {
        let c = match d {
            Direction::T => &mut self.t,
            Direction::X => &mut self.x,
            Direction::Y => &mut self.y,
        };
        if *c == 0 {
            return None;
        }
        *c -= 1;
        Some(self)
    }

    /// Component-wise `self ≥ other`.
    pub fn dominates(self, other: MultiIndex) -> bool {
        self.t >= other.t && self.x >= other.x && self.y >= other.y
    }

    pub fn checked_sub(self, other: MultiIndex) -> Option<MultiIndex> {
        Some(MultiIndex {
            t: self.t.checked_sub(other.t)?,
            x: self.x.checked_sub(other.x)?,
            y: self.y.checked_sub(other.y)?,
        })
    }

    /// All `τ ≤ self` component-wise.
    pub fn below(self) -> impl Iterator<Item = MultiIndex> {
        (0..=self.t).flat_map(move |t| {
            (0..=self.x).flat_map(move |x| (0..=self.y).map(move |y| MultiIndex { t, x, y }))
        })
    }

    /// Directions in application order `t…, x…, y…`.
    pub fn directions(self) -> impl Iterator<Item = Direction> {
        core::iter::repeat_n(Direction::T, self.t as usize)
            .chain(core::iter::repeat_n(Direction::X, self.x as usize))
            .chain(core::iter::repeat_n(Direction::Y, self.y as usize))
    }
}

impl Add for MultiIndex {
    type Output = MultiIndex;
    fn add(self, o: MultiIndex) -> MultiIndex {
        MultiIndex { t: self.t + o.t, x: self.x + o.x, y: self.y + o.y }
    }
}

impl fmt::Display for MultiIndex {
    /// Subscript letters, `txy` order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.directions() {
            write!(f, "{}", d.name())?;
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Lambda,
    Mu,
    Eps,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::Lambda, Param::Mu, Param::Eps];

    pub fn name(self) -> &'static str {
        match self {
            Param::Lambda => "lambda",
            Param::Mu => "mu",
            Param::Eps => "eps",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Indep(Direction),
    Jet(Dep, MultiIndex),
    Param(Param),
    /// `A_id^(order)(t)`; depends on `t` only.
    ArbFun { id: u16, order: u16 },
}

impl Generator {
    pub const T: Generator = Generator::Indep(Direction::T);
    pub const X: Generator = Generator::Indep(Direction::X);
    pub const Y: Generator = Generator::Indep(Direction::Y);

    pub fn jet(dep: Dep, t: u8, x: u8, y: u8) -> Generator {
        Generator::Jet(dep, MultiIndex::new(t, x, y))
    }

    pub fn as_jet(self) -> Option<(Dep, MultiIndex)> {
        match self {
            Generator::Jet(d, m) => Some((d, m)),
            _ => None,
        }
    }

    pub fn is_jet_of(self, dep: Dep) -> bool {
        matches!(self, Generator::Jet(d, _) if d == dep)
    }
}

impl fmt::Display for Generator {
    /// Plain notation accepted by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Indep(d) => write!(f, "{}", d.name()),
            Generator::Jet(dep, idx) if idx.order() == 0 => write!(f, "{}", dep.name()),
            Generator::Jet(dep, idx) => write!(f, "{}_{}", dep.name(), idx),
            Generator::Param(p) => write!(f, "{}", p.name()),
            Generator::ArbFun { id, order } => match order {
                0 => write!(f, "A{}(t)", id),
                1..=3 => {
                    write!(f, "A{}", id)?;
                    for _ in 0..*order {
                        write!(f, "'")?;
                    }
                    write!(f, "(t)")
                }
                _ => write!(f, "A{}^({})(t)", id, order),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn order_is_documented_order() {
        let gens = [
            Generator::T,
            Generator::X,
            Generator::Y,
            Generator::jet(Dep::U, 0, 0, 0),
            Generator::jet(Dep::U, 0, 1, 1),
            Generator::jet(Dep::U, 1, 0, 0),
            Generator::jet(Dep::S, 0, 0, 0),
            Generator::jet(Dep::Q, 0, 0, 0),
            Generator::jet(Dep::P, 0, 0, 0),
            Generator::Param(Param::Lambda),
            Generator::Param(Param::Eps),
            Generator::ArbFun { id: 1, order: 0 },
            Generator::ArbFun { id: 1, order: 2 },
            Generator::ArbFun { id: 2, order: 0 },
        ];
        for w in gens.windows(2) {
            assert!(w[0] < w[1], "{:?} !< {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(Generator::jet(Dep::U, 1, 1, 1).to_string(), "u_txy");
        assert_eq!(Generator::jet(Dep::S, 0, 0, 0).to_string(), "s");
        assert_eq!(Generator::ArbFun { id: 1, order: 2 }.to_string(), "A1''(t)");
        assert_eq!(Generator::ArbFun { id: 3, order: 5 }.to_string(), "A3^(5)(t)");
    }

    #[test]
    fn below_enumerates_box() {
        assert_eq!(MultiIndex::new(1, 2, 0).below().count(), 6);
    }
}
