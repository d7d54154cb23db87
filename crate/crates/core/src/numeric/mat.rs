//! Fixed 4×4 complex matrices and the `[re, im]` JSON encoding.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::real::{cabs, cnorm1, czero, Cx, Real};

pub type C64 = Complex<f64>;
pub type Mat4<T> = [[Cx<T>; 4]; 4];

pub fn zero<T: Real>() -> Mat4<T> {
    [[czero(); 4]; 4]
}

pub fn identity<T: Real>() -> Mat4<T> {
    let mut m = zero::<T>();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex::new(T::one(), T::zero());
    }
    m
}

pub fn mul<T: Real>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    let mut m = zero::<T>();
    for i in 0..4 {
        for j in 0..4 {
            let mut s = czero();
            for k in 0..4 {
                s = s + a[i][k] * b[k][j];
            }
            m[i][j] = s;
        }
    }
    m
}

pub fn add<T: Real>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    let mut m = *a;
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = m[i][j] + b[i][j];
        }
    }
    m
}

pub fn sub<T: Real>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    let mut m = *a;
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = m[i][j] - b[i][j];
        }
    }
    m
}

pub fn scale<T: Real>(a: &Mat4<T>, c: Cx<T>) -> Mat4<T> {
    a.map(|r| r.map(|z| z * c))
}

/// `a + Σ cₖ bₖ`
pub fn axpy<T: Real>(a: &Mat4<T>, terms: &[(T, &Mat4<T>)]) -> Mat4<T> {
    let mut m = *a;
    for (c, b) in terms {
        if c.is_zero() {
            continue;
        }
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = m[i][j] + b[i][j] * *c;
            }
        }
    }
    m
}

pub fn trace<T: Real>(a: &Mat4<T>) -> Cx<T> {
    a[0][0] + a[1][1] + a[2][2] + a[3][3]
}

/// Max-row-sum norm with `|z| = |re|+|im|`.
pub fn norm_inf1<T: Real>(a: &Mat4<T>) -> T {
    let mut best = T::zero();
    for row in a {
        let mut s = T::zero();
        for z in row {
            s = s + cnorm1(*z);
        }
        if s > best {
            best = s;
        }
    }
    best
}

/// `‖a‖∞` with complex moduli.
pub fn norm_inf<T: Real>(a: &Mat4<T>) -> T {
    let mut best = T::zero();
    for row in a {
        let mut s = T::zero();
        for z in row {
            s = s + cabs(*z);
        }
        if s > best {
            best = s;
        }
    }
    best
}

pub fn max_abs<T: Real>(a: &Mat4<T>) -> T {
    let mut best = T::zero();
    for row in a {
        for z in row {
            let v = cnorm1(*z);
            if v > best {
                best = v;
            }
        }
    }
    best
}

pub fn to_f64<T: Real>(a: &Mat4<T>) -> Mat4<f64> {
    a.map(|r| r.map(|z| Complex::new(z.re.to_f64(), z.im.to_f64())))
}

pub fn from_f64<T: Real>(a: &Mat4<f64>) -> Mat4<T> {
    a.map(|r| r.map(|z| Complex::new(T::from_f64(z.re), T::from_f64(z.im))))
}

pub fn to_nalgebra(a: &Mat4<f64>) -> nalgebra::Matrix4<C64> {
    nalgebra::Matrix4::from_fn(|i, j| a[i][j])
}

pub fn from_nalgebra(a: &nalgebra::Matrix4<C64>) -> Mat4<f64> {
    let mut m = zero::<f64>();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[(i, j)];
        }
    }
    m
}

pub fn inverse(a: &Mat4<f64>) -> Option<Mat4<f64>> {
    to_nalgebra(a).try_inverse().map(|m| from_nalgebra(&m))
}

pub fn determinant(a: &Mat4<f64>) -> C64 {
    to_nalgebra(a).determinant()
}

/// Eigenvalues through a complex Schur decomposition.
pub fn eigenvalues(a: &Mat4<f64>) -> Option<Vec<C64>> {
    to_nalgebra(a)
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
}

/// Largest distance in a greedy nearest matching of two multisets.
pub fn multiset_distance(got: &[C64], want: &[C64]) -> f64 {
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; got.len()];
    let mut worst: f64 = 0.0;
    for w in want {
        let mut best = None;
        for (k, g) in got.iter().enumerate() {
            if used[k] {
                continue;
            }
            let d = (g - w).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        let (k, d) = best.expect("lengths agree");
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Serde helpers writing complex numbers as `[re, im]`.
pub mod cser {
    use super::*;

    pub fn pair(z: &C64) -> [f64; 2] {
        [z.re, z.im]
    }

    pub fn unpair(p: [f64; 2]) -> C64 {
        Complex::new(p[0], p[1])
    }

    pub mod c64 {
        use super::*;
        pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
            pair(z).serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
            Ok(unpair(<[f64; 2]>::deserialize(d)?))
        }
    }

    pub mod point {
        use super::*;
        pub fn serialize<S: Serializer>(z: &[C64; 2], s: S) -> Result<S::Ok, S::Error> {
            [pair(&z[0]), pair(&z[1])].serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[C64; 2], D::Error> {
            let p = <[[f64; 2]; 2]>::deserialize(d)?;
            Ok([unpair(p[0]), unpair(p[1])])
        }
    }

    pub mod points {
        use super::*;
        pub fn serialize<S: Serializer>(z: &[[C64; 2]], s: S) -> Result<S::Ok, S::Error> {
            let v: Vec<[[f64; 2]; 2]> = z.iter().map(|p| [pair(&p[0]), pair(&p[1])]).collect();
            v.serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[C64; 2]>, D::Error> {
            let v = Vec::<[[f64; 2]; 2]>::deserialize(d)?;
            Ok(v.into_iter()
                .map(|p| [unpair(p[0]), unpair(p[1])])
                .collect())
        }
    }

    pub mod vec {
        use super::*;
        pub fn serialize<S: Serializer>(z: &[C64], s: S) -> Result<S::Ok, S::Error> {
            let v: Vec<[f64; 2]> = z.iter().map(pair).collect();
            v.serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
            Ok(Vec::<[f64; 2]>::deserialize(d)?
                .into_iter()
                .map(unpair)
                .collect())
        }
    }

    pub mod mat4 {
        use super::*;
        pub fn serialize<S: Serializer>(m: &Mat4<f64>, s: S) -> Result<S::Ok, S::Error> {
            m.map(|r| r.map(|z| pair(&z))).serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Mat4<f64>, D::Error> {
            Ok(<[[[f64; 2]; 4]; 4]>::deserialize(d)?.map(|r| r.map(unpair)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_triangular() {
        let mut m = identity::<f64>();
        m[0][1] = Complex::new(3.0, 1.0);
        m[2][2] = Complex::new(0.0, 2.0);
        m[3][3] = Complex::new(-1.0, 0.0);
        let ev = eigenvalues(&m).unwrap();
        let want = [
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 2.0),
            Complex::new(-1.0, 0.0),
        ];
        assert!(multiset_distance(&ev, &want) < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let mut m = identity::<f64>();
        m[1][2] = Complex::new(0.5, -0.25);
        m[3][0] = Complex::new(2.0, 0.0);
        let inv = inverse(&m).unwrap();
        let p = mul(&m, &inv);
        assert!(norm_inf(&sub(&p, &identity())) < 1e-14);
    }
}
