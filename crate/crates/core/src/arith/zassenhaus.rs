//! Univariate factorization over ℚ by the classical modular method:
//! factor modulo a small prime, Hensel-lift to `p^k`, recombine.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Q};
use super::upoly::UPoly;

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut qt = vec![0u64; r.len() - db];
    for k in (0..qt.len()).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bc % p) % p;
        }
        qt[k] = c;
    }
    r.truncate(db);
    (trim(qt), trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns `(s, t)` with `s·a + t·b = 1` for coprime inputs.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (qt, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&qt, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = fp_sub(&t0, &fp_mul(&qt, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(r0[0], p);
    let sc = |v: Fp| trim(v.into_iter().map(|c| c * inv % p).collect());
    (sc(s0), sc(t0))
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut result = vec![1u64];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        result = fp_divrem(&fp_mul(&result, &result, p), m, p).1;
        if e.bit(i) {
            result = fp_divrem(&fp_mul(&result, &b, p), m, p).1;
        }
    }
    result
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    let pb = BigUint::from(p);
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push((f.clone(), f.len() - 1));
            break;
        }
        h = fp_powmod(&h, &pb, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd `p`).
fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&fp_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn to_fp(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

type Zp = Vec<BigInt>;

fn zp_mul(a: &Zp, b: &Zp, m: &BigInt) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// Lifts `f ≡ lc·∏ g_i (mod p)` with monic `g_i` to modulus `p^k`.
fn hensel_lift(f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Zp> {
    let pk = BigInt::from(p).pow(k);
    let lc = f.last().unwrap().clone();
    // Monic target modulo p^k.
    let lc_inv = lc.modinv(&pk).expect("leading coefficient invertible mod p^k");
    let mut target: Zp = f.iter().map(|c| (c * &lc_inv).mod_floor(&pk)).collect();
    let mut lifted = Vec::new();
    for (idx, g) in factors.iter().enumerate() {
        if idx + 1 == factors.len() {
            lifted.push(target.clone());
            break;
        }
        let rest_fp = factors[idx + 1..]
            .iter()
            .fold(vec![1u64], |acc, h| fp_mul(&acc, h, p));
        let (a, b) = lift_pair(&target, g, &rest_fp, p, k);
        lifted.push(a);
        target = b;
    }
    lifted
}

/// Linear Hensel lifting of a monic factorization `target ≡ a·b (mod p)`.
fn lift_pair(target: &Zp, a0: &Fp, b0: &Fp, p: u64, k: u32) -> (Zp, Zp) {
    let (s, t) = fp_bezout(a0, b0, p);
    let mut a: Zp = a0.iter().map(|&c| BigInt::from(c)).collect();
    let mut b: Zp = b0.iter().map(|&c| BigInt::from(c)).collect();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let prod = zp_mul(&a, &b, &pj1);
        let n = target.len().max(prod.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let d = target.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default();
                d.mod_floor(&pj1) / &pj
            })
            .collect();
        let e = to_fp(&e, p);
        let da = fp_divrem(&fp_mul(&t, &e, p), a0, p).1;
        let db = fp_divrem(&fp_sub(&e, &fp_mul(b0, &da, p), p), a0, p).0;
        for (i, c) in da.iter().enumerate() {
            a[i] = (&a[i] + &pj * c).mod_floor(&pj1);
        }
        if db.len() > b.len() {
            b.resize(db.len(), BigInt::zero());
        }
        for (i, c) in db.iter().enumerate() {
            b[i] = (&b[i] + &pj * c).mod_floor(&pj1);
        }
        pj = pj1;
    }
    let _ = s;
    (a, b)
}

fn to_q(v: &[BigInt]) -> UPoly<Q> {
    UPoly::new(v.iter().map(|c| Q::from_integer(c.clone())).collect())
}

fn to_z(f: &UPoly<Q>) -> Vec<BigInt> {
    let p = f.primitive();
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// Factors a primitive square-free integer polynomial of positive degree.
fn factor_squarefree_z(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let fq = to_q(f);
    let df = fq.derivative();
    let df_z: Vec<BigInt> = {
        let m = df.coeffs();
        m.iter().map(|c| c.to_integer()).collect()
    };
    // Pick the good prime with the fewest modular factors among the first few.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        let g = fp_gcd(&fp, &to_fp(&df_z, p), p);
        if g.len() > 1 {
            continue;
        }
        let monic = fp_monic(&fp, p);
        let mut facs = Vec::new();
        for (g, d) in distinct_degree(&monic, p) {
            facs.extend(equal_degree(&g, d, p, &mut rng));
        }
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, facs) = best.unwrap();

    // Coefficient bound: 2^n · ||f||_2 · |lc|, doubled for the symmetric range.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let bound = (BigInt::one() << n) * norm * lc.abs() * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let lifted = hensel_lift(f, &facs, p, k);
    recombine(f, lifted, &pk)
}

fn recombine(f: &[BigInt], mut pool: Vec<Zp>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut f = to_q(f);
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        let idx: Vec<usize> = (0..pool.len()).collect();
        for subset in combinations(&idx, size) {
            let lc = f.lc().to_integer();
            let mut g: Zp = vec![lc];
            for &i in &subset {
                g = zp_mul(&g, &pool[i], pk);
            }
            let g: Vec<BigInt> = g.iter().map(|c| sym_mod(c, pk)).collect();
            let cand = to_q(&g).primitive();
            if cand.is_constant() {
                continue;
            }
            if let Some(quot) = f.div_exact(&cand) {
                out.push(to_z(&cand));
                f = quot;
                let mut keep = Vec::new();
                for (i, fac) in pool.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(fac);
                    }
                }
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if !f.is_constant() {
        out.push(to_z(&f));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Irreducible factorization over ℚ: returns `(unit, [(factor, multiplicity)])`
/// with integer-primitive factors of positive leading coefficient, sorted by
/// degree and then coefficients.
pub fn factor_rational(f: &UPoly<Q>) -> (Q, Vec<(UPoly<Q>, u32)>) {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let mut factors = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let z = to_z(&part);
        for g in factor_squarefree_z(&z) {
            factors.push((to_q(&g), mult));
        }
    }
    sort_factors(&mut factors);
    let mut prod = UPoly::one();
    for (g, m) in &factors {
        prod = prod.mul(&g.pow(*m));
    }
    let unit = f.lc().over(&prod.lc());
    (unit, factors)
}

pub(crate) fn sort_factors(v: &mut [(UPoly<Q>, u32)]) {
    v.sort_by(|(a, _), (b, _)| {
        a.deg().cmp(&b.deg()).then_with(|| {
            for i in (0..=a.deg()).rev() {
                let c = a.coeff(i).cmp(&b.coeff(i));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly<Q> {
        UPoly::from_ints(cs)
    }

    #[test]
    fn factors_product_of_quadratics() {
        // (t^2 + 1)(t^2 - 2)(3t + 1)
        let f = p(&[1, 0, 1]).mul(&p(&[-2, 0, 1])).mul(&p(&[1, 3]));
        let (u, fs) = factor_rational(&f);
        assert_eq!(u, super::super::field::qi(1));
        let got: Vec<_> = fs.iter().map(|(g, m)| (g.clone(), *m)).collect();
        assert_eq!(got, vec![(p(&[1, 3]), 1), (p(&[-2, 0, 1]), 1), (p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn irreducible_swinnerton_dyer_like() {
        // t^4 - 10 t^2 + 1 is irreducible over ℚ but splits mod every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        let (_, fs) = factor_rational(&f);
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn repeated_factors() {
        let f = p(&[0, 0, -3, 1]).scale(&super::super::field::qi(-2));
        let (u, fs) = factor_rational(&f);
        assert_eq!(u, super::super::field::qi(-2));
        assert_eq!(fs, vec![(p(&[-3, 1]), 1), (p(&[0, 1]), 2)]);
    }
}
