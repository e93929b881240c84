use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::heilbronn::heilbronn_cremona;
use super::p1::P1List;
use crate::error::{domain, internal, Error, Result};
use crate::exact::lattice::{integral_kernel, lattice_basis};
use crate::exact::rational::{is_prime, lcm_of_denominators, Rational};
use crate::exact::{QMatrix, Subspace};

/// Which eigenspace of the star involution is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
            Sign::Zero => "0",
        })
    }
}

/// Weight-2 modular symbols for `Gamma_0(N)`, `N` prime, presented as the
/// quotient of the free module on `P^1(Z/N)` by the Manin relations (and the
/// star relation when a sign is chosen).
pub struct ModularSymbolSpace {
    level: u64,
    sign: Sign,
    p1: P1List,
    /// Manin symbol index behind each basis vector.
    free: Vec<usize>,
    /// Every Manin symbol as `gen_num[i] / denom` in the basis.
    gen_num: Vec<Vec<i64>>,
    denom: i64,
    boundary: QMatrix,
    cuspidal: Subspace,
    hecke_cache: Mutex<BTreeMap<u64, QMatrix>>,
}

impl fmt::Debug for ModularSymbolSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModularSymbolSpace")
            .field("level", &self.level)
            .field("sign", &self.sign)
            .field("dimension", &self.dimension())
            .field("cuspidal_dimension", &self.cuspidal_dimension())
            .finish()
    }
}

pub fn build_space(n: u64, sign: Sign) -> Result<ModularSymbolSpace> {
    ModularSymbolSpace::new(n, sign)
}

impl ModularSymbolSpace {
    pub fn new(n: u64, sign: Sign) -> Result<Self> {
        if !is_prime(n) {
            return Err(domain!("level {n} is not prime"));
        }
        let p1 = P1List::new(n)?;
        let ng = p1.len();
        let el: Vec<(i64, i64)> = (0..ng)
            .map(|i| {
                let e = p1.element(i);
                (e.c as i64, e.d as i64)
            })
            .collect();
        let sigma: Vec<usize> = el.iter().map(|&(c, d)| p1.index(d, -c)).collect();
        let tau: Vec<usize> = el.iter().map(|&(c, d)| p1.index(d, -c - d)).collect();
        let star: Vec<usize> = el.iter().map(|&(c, d)| p1.index(-c, d)).collect();

        // two-term relations: orbits under sigma (and star), coefficients +-1
        let s = sign.value();
        let mut assign: Vec<Option<(usize, i64)>> = vec![None; ng];
        let mut zero = vec![false; ng];
        let mut reps = Vec::new();
        for g in 0..ng {
            if assign[g].is_some() {
                continue;
            }
            assign[g] = Some((g, 1));
            let mut members = vec![g];
            let mut queue = vec![(g, 1i64)];
            let mut conflict = false;
            while let Some((x, c)) = queue.pop() {
                let mut edges = vec![(sigma[x], -c)];
                if s != 0 {
                    edges.push((star[x], s * c));
                }
                for (y, t) in edges {
                    match assign[y] {
                        None => {
                            assign[y] = Some((g, t));
                            members.push(y);
                            queue.push((y, t));
                        }
                        Some((_, t2)) if t2 != t => conflict = true,
                        _ => {}
                    }
                }
            }
            if conflict {
                for m in members {
                    zero[m] = true;
                }
            } else {
                reps.push(g);
            }
        }
        let col_of: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();

        // three-term relations over the surviving representatives
        let mut rel_rows: Vec<Vec<Rational>> = Vec::new();
        let mut seen = vec![false; ng];
        for g in 0..ng {
            if seen[g] {
                continue;
            }
            let orbit = [g, tau[g], tau[tau[g]]];
            let mut row = vec![Rational::zero(); reps.len()];
            for &y in &orbit {
                seen[y] = true;
                if zero[y] {
                    continue;
                }
                let (r, c) = assign[y].unwrap();
                row[col_of[&r]] += Rational::from_integer(c.into());
            }
            if row.iter().any(|x| !x.is_zero()) {
                rel_rows.push(row);
            }
        }
        let rel = QMatrix::from_rows_with_cols(rel_rows, reps.len());
        let (rr, pivots) = rel.rref();
        let free_cols: Vec<usize> = (0..reps.len()).filter(|c| !pivots.contains(c)).collect();
        let dim = free_cols.len();
        let free_pos: BTreeMap<usize, usize> =
            free_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rep_vec: Vec<Vec<Rational>> = vec![vec![Rational::zero(); dim]; reps.len()];
        for (&c, &i) in &free_pos {
            rep_vec[c][i] = Rational::one();
        }
        for (row, &pc) in pivots.iter().enumerate() {
            for (&fc, &i) in &free_pos {
                rep_vec[pc][i] = -rr[(row, fc)].clone();
            }
        }
        let gen_vec: Vec<Vec<Rational>> = (0..ng)
            .map(|g| {
                if zero[g] {
                    return vec![Rational::zero(); dim];
                }
                let (r, c) = assign[g].unwrap();
                let c = Rational::from_integer(c.into());
                rep_vec[col_of[&r]].iter().map(|x| x * &c).collect()
            })
            .collect();
        let d = lcm_of_denominators(gen_vec.iter().flatten());
        let denom = d.to_i64().ok_or_else(|| internal!("relation denominators overflow"))?;
        let dr = Rational::from_integer(d);
        let gen_num = gen_vec
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| {
                        (x * &dr)
                            .to_integer()
                            .to_i64()
                            .ok_or_else(|| internal!("relation coefficients overflow"))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let free: Vec<usize> = free_cols.iter().map(|&c| reps[c]).collect();

        // boundary into the cusps (infinity, 0)
        let boundary_rows: Vec<Vec<Rational>> = free
            .iter()
            .map(|&g| boundary_of(g, n, sign))
            .collect();
        let boundary = QMatrix::from_rows_with_cols(boundary_rows, 2);
        let cuspidal = Subspace::from_rows(boundary.left_kernel(), dim);

        Ok(Self {
            level: n,
            sign,
            p1,
            free,
            gen_num,
            denom,
            boundary,
            cuspidal,
            hecke_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn cuspidal_dimension(&self) -> usize {
        self.cuspidal.dim()
    }

    pub fn cuspidal_subspace(&self) -> &Subspace {
        &self.cuspidal
    }

    pub fn boundary_matrix(&self) -> &QMatrix {
        &self.boundary
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    /// Number of Manin symbols, `N + 1`.
    pub fn generator_count(&self) -> usize {
        self.p1.len()
    }

    /// Manin symbol `(c : d)` in the basis.
    pub fn manin_symbol(&self, c: i64, d: i64) -> Vec<Rational> {
        self.generator_vector(self.p1.index(c, d))
    }

    pub fn generator_vector(&self, g: usize) -> Vec<Rational> {
        self.gen_num[g]
            .iter()
            .map(|&x| Rational::new(x.into(), self.denom.into()))
            .collect()
    }

    /// Integer numerators and common denominator of every Manin symbol.
    pub fn generator_numerators(&self) -> (&[Vec<i64>], i64) {
        (&self.gen_num, self.denom)
    }

    /// Manin symbol index of each basis vector.
    pub fn basis_symbols(&self) -> &[usize] {
        &self.free
    }

    /// Boundary of a vector in the basis, in the cusp coordinates (infinity, 0).
    pub fn boundary(&self, v: &[Rational]) -> Vec<Rational> {
        self.boundary.apply_row(v)
    }

    /// `T_p` on the whole space (Eisenstein part included).
    pub fn hecke_ambient(&self, p: u64) -> Result<QMatrix> {
        if p == self.level {
            return Err(Error::Unsupported(format!(
                "T_{p} at the level (U_N) is not implemented"
            )));
        }
        if !is_prime(p) {
            return Err(domain!("Hecke index {p} is not prime"));
        }
        if let Some(m) = self.hecke_cache.lock().unwrap().get(&p) {
            return Ok(m.clone());
        }
        let hs = heilbronn_cremona(p);
        let dim = self.dimension();
        let rows: Vec<Vec<Rational>> = self
            .free
            .iter()
            .map(|&g| {
                let e = self.p1.element(g);
                let (c, d) = (e.c as i64, e.d as i64);
                let mut acc = vec![0i128; dim];
                for h in &hs {
                    let idx = self.p1.index(c * h[0] + d * h[2], c * h[1] + d * h[3]);
                    for (a, &x) in acc.iter_mut().zip(&self.gen_num[idx]) {
                        *a += x as i128;
                    }
                }
                acc.into_iter()
                    .map(|a| Rational::new(BigInt::from(a), self.denom.into()))
                    .collect()
            })
            .collect();
        let m = QMatrix::from_rows_with_cols(rows, dim);
        self.hecke_cache.lock().unwrap().insert(p, m.clone());
        Ok(m)
    }

    /// `T_p` restricted to the cuspidal subspace, in its echelon basis.
    pub fn hecke_operator(&self, p: u64) -> Result<QMatrix> {
        self.cuspidal.restrict(&self.hecke_ambient(p)?)
    }

    /// The star involution `(c : d) -> (-c : d)` on the whole space.
    pub fn star_involution(&self) -> QMatrix {
        let rows = self
            .free
            .iter()
            .map(|&g| {
                let e = self.p1.element(g);
                self.manin_symbol(-(e.c as i64), e.d as i64)
            })
            .collect();
        QMatrix::from_rows_with_cols(rows, self.dimension())
    }

    /// The modular symbol `{0, a/b}` by continued fractions.
    pub fn symbol_zero_to(&self, a: i64, b: i64) -> Vec<Rational> {
        let mut acc = vec![0i128; self.dimension()];
        let mut add = |c: i64, d: i64, s: i64| {
            let idx = self.p1.index(c, d);
            for (x, &y) in acc.iter_mut().zip(&self.gen_num[idx]) {
                *x += (s * y) as i128;
            }
        };
        // convergents p_j/q_j, starting from 0/1 and 1/0
        let (mut q_prev2, mut q_prev1) = (1i64, 0i64);
        // j = -1 term: (q_{-1} : q_{-2}) = (0 : 1) with sign (-1)^{-2} = +1
        add(0, 1, 1);
        let (mut x, mut y) = (a, b);
        if y < 0 {
            x = -x;
            y = -y;
        }
        let mut j = 0i64;
        while y != 0 {
            let t = x.div_euclid(y);
            let r = x.rem_euclid(y);
            let q = t * q_prev1 + q_prev2;
            let s = if j % 2 == 0 { -1 } else { 1 };
            add(s * q, q_prev1, 1);
            q_prev2 = q_prev1;
            q_prev1 = q;
            x = y;
            y = r;
            j += 1;
        }
        acc.into_iter()
            .map(|v| Rational::new(BigInt::from(v), self.denom.into()))
            .collect()
    }

    /// The modular symbol `{r, s}` for rationals given as (num, den); `den = 0` means infinity.
    pub fn symbol(&self, r: (i64, i64), s: (i64, i64)) -> Vec<Rational> {
        let to = |(a, b): (i64, i64)| -> Vec<Rational> {
            if b == 0 {
                // {0, oo} = (0 : 1)
                self.manin_symbol(0, 1)
            } else {
                self.symbol_zero_to(a, b)
            }
        };
        let (x, y) = (to(s), to(r));
        x.iter().zip(&y).map(|(a, b)| a - b).collect()
    }

    /// Z-basis of the image of the integral Manin symbols.
    pub fn integral_lattice(&self) -> Vec<Vec<Rational>> {
        let gens: Vec<Vec<Rational>> = (0..self.generator_count())
            .map(|g| self.generator_vector(g))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        lattice_basis(&gens)
    }

    /// Z-basis of the integral lattice intersected with the cuspidal subspace.
    pub fn integral_cuspidal_lattice(&self) -> Vec<Vec<Rational>> {
        let l = self.integral_lattice();
        let images: Vec<Vec<Rational>> = l.iter().map(|v| self.boundary(v)).collect();
        integral_kernel(&l, &images)
    }
}

fn boundary_of(g: usize, n: u64, sign: Sign) -> Vec<Rational> {
    let z = Rational::zero;
    if sign == Sign::Minus {
        return vec![z(), z()];
    }
    if g == 0 {
        // (0:1) = {0, oo}
        vec![Rational::one(), -Rational::one()]
    } else if g == n as usize {
        // (1:0) = {oo, 0}
        vec![-Rational::one(), Rational::one()]
    } else {
        vec![z(), z()]
    }
}

/// Genus of `X_0(N)` for prime `N`.
pub fn genus_x0_prime(n: u64) -> u64 {
    let mu = n as i64 + 1;
    let nu2 = match n {
        2 => 1,
        _ => 1 + crate::dirichlet::legendre(-1, n) as i64,
    };
    let nu3 = match n {
        3 => 1,
        2 => 0,
        _ => 1 + crate::dirichlet::legendre(-3, n) as i64,
    };
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps
    ((12 + mu - 3 * nu2 - 4 * nu3 - 12) / 12) as u64
}
