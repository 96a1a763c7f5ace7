//! Arithmetic in H₃(ℤ) in the coordinates `(x, y, z) = z^z·y^y·x^x`.

use core::fmt;

use thiserror::Error;

/// A group element `(x,(y,z))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Site {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Site {
    pub const IDENTITY: Site = Site { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Site { x, y, z }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("integer overflow in group arithmetic")]
    Overflow,
}

fn add(a: i64, b: i64) -> Result<i64, GroupError> {
    a.checked_add(b).ok_or(GroupError::Overflow)
}

/// `a·b = (a.x+b.x, a.y+b.y, a.z+b.z+a.x·b.y)`.
pub fn mul(a: Site, b: Site) -> Result<Site, GroupError> {
    let shear = a.x.checked_mul(b.y).ok_or(GroupError::Overflow)?;
    Ok(Site {
        x: add(a.x, b.x)?,
        y: add(a.y, b.y)?,
        z: add(add(a.z, b.z)?, shear)?,
    })
}

pub fn inv(a: Site) -> Result<Site, GroupError> {
    let neg = |v: i64| v.checked_neg().ok_or(GroupError::Overflow);
    let xy = a.x.checked_mul(a.y).ok_or(GroupError::Overflow)?;
    Ok(Site {
        x: neg(a.x)?,
        y: neg(a.y)?,
        z: add(neg(a.z)?, xy)?,
    })
}

/// The generator `s` itself as a site.
pub fn generator(g: Generator, sign: Sign) -> Site {
    let s = match sign {
        Sign::Plus => 1,
        Sign::Minus => -1,
    };
    match g {
        Generator::X => Site::new(s, 0, 0),
        Generator::Y => Site::new(0, s, 0),
        Generator::Z => Site::new(0, 0, s),
    }
}

/// Left neighbor `s·h`.
pub fn neighbor(h: Site, g: Generator, sign: Sign) -> Result<Site, GroupError> {
    mul(generator(g, sign), h)
}

/// 2-adic valuation; `None` stands for ν₂(0) = ∞.
pub fn nu2(n: i64) -> Option<u32> {
    if n == 0 {
        None
    } else {
        Some(n.trailing_zeros())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: Site = Site::new(1, 0, 0);
    const Y: Site = Site::new(0, 1, 0);
    const Z: Site = Site::new(0, 0, 1);

    #[test]
    fn commutator_of_x_and_y_is_z() {
        assert_eq!(mul(X, Y).unwrap(), Site::new(1, 1, 1));
        assert_eq!(mul(Y, X).unwrap(), Site::new(1, 1, 0));
        let xy = mul(X, Y).unwrap();
        let xinv_yinv = mul(inv(X).unwrap(), inv(Y).unwrap()).unwrap();
        assert_eq!(mul(xy, xinv_yinv).unwrap(), Z);
    }

    #[test]
    fn identity_and_x_action() {
        let a = Site::new(4, -7, 11);
        assert_eq!(mul(Site::IDENTITY, a).unwrap(), a);
        assert_eq!(mul(X, a).unwrap(), Site::new(5, -7, 4));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inv(X).unwrap(), Site::new(-1, 0, 0));
        assert_eq!(inv(Site::IDENTITY).unwrap(), Site::IDENTITY);
        let a = Site::new(2, 3, 5);
        let b = inv(a).unwrap();
        assert_eq!(b, Site::new(-2, -3, 1));
        assert_eq!(mul(a, b).unwrap(), Site::IDENTITY);
        assert_eq!(mul(b, a).unwrap(), Site::IDENTITY);
    }

    #[test]
    fn neighbor_examples() {
        let h = Site::new(0, 3, 0);
        assert_eq!(neighbor(h, Generator::X, Sign::Plus).unwrap(), Site::new(1, 3, 3));
        let g = Site::new(2, -1, 4);
        assert_eq!(neighbor(g, Generator::Y, Sign::Minus).unwrap(), Site::new(2, -2, 4));
        let up = neighbor(g, Generator::Z, Sign::Plus).unwrap();
        assert_eq!(neighbor(up, Generator::Z, Sign::Minus).unwrap(), g);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Site::new(i64::MAX, 1, 0);
        assert_eq!(mul(big, X), Err(GroupError::Overflow));
        assert_eq!(mul(big, big), Err(GroupError::Overflow));
        assert_eq!(inv(Site::new(i64::MIN, 0, 0)), Err(GroupError::Overflow));
    }

    #[test]
    fn valuation() {
        assert_eq!(nu2(0), None);
        assert_eq!(nu2(12), Some(2));
        assert_eq!(nu2(-8), Some(3));
        assert_eq!(nu2(7), Some(0));
    }
}
