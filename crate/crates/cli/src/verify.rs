//! Exhaustive cross-checks of the digit arithmetic against the plain-integer
//! oracle, for one parameter set.

use std::thread;

use endoring_core::oracle::{
    self, add_mod, enumerate_ring, euclid_inv, find_inverse, mul_mod, neg_mod, NaiveMatrix,
    RingElements,
};
use endoring_core::{census, Digits, EndoMatrix, Error, ModulePoint, RingParams};

pub const DEFAULT_BUDGET: u64 = oracle::DEFAULT_PAIRWISE_BUDGET;

/// Outcome of one named check. `failure` holds the first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("ok    {} ({} cases)", self.name, self.cases),
            Some(why) => format!("FAIL  {}: {}", self.name, why),
        }
    }
}

struct Tally {
    cases: u64,
    hits: u64,
    failure: Option<String>,
}

/// Runs `f` over every element on all cores. `f` returns whether the element
/// is a "hit" (counted) or a counterexample description.
fn sweep<F>(elements: RingElements, f: F) -> Tally
where
    F: Fn(&NaiveMatrix) -> Result<bool, String> + Sync,
{
    let parts = thread::available_parallelism().map_or(1, |n| n.get());
    let chunks = elements.split(parts);
    let partial: Vec<Tally> = thread::scope(|s| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                let f = &f;
                s.spawn(move || {
                    let mut t = Tally { cases: 0, hits: 0, failure: None };
                    for x in chunk {
                        t.cases += 1;
                        match f(&x) {
                            Ok(true) => t.hits += 1,
                            Ok(false) => {}
                            Err(why) => {
                                t.failure = Some(why);
                                break;
                            }
                        }
                    }
                    t
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    partial.into_iter().fold(Tally { cases: 0, hits: 0, failure: None }, |acc, t| Tally {
        cases: acc.cases + t.cases,
        hits: acc.hits + t.hits,
        failure: acc.failure.or(t.failure),
    })
}

fn endo(x: &NaiveMatrix) -> EndoMatrix {
    EndoMatrix::try_from(x).expect("enumerated element is valid")
}

fn check_digits(pp: RingParams) -> Check {
    let n = pp.modulus();
    let n128 = u128::from(n);
    let mut cases = 0;
    let mut failure = None;
    'outer: for x in 0..n {
        let dx = Digits::from_u64(pp, x);
        if dx.to_int() != x {
            failure = Some(format!("round trip of {x} gave {}", dx.to_int()));
            break;
        }
        if u128::from(dx.neg().to_int()) != neg_mod(x.into(), n128) {
            failure = Some(format!("-{x}"));
            break;
        }
        match (dx.inv(), euclid_inv(x.into(), n128)) {
            (Ok(i), Ok(j)) if u128::from(i.to_int()) == j => {}
            (Err(Error::NotAUnit), Err(Error::NotCoprime { .. })) => {}
            (got, want) => {
                failure = Some(format!("inverse of {x}: digits {got:?}, euclid {want:?}"));
                break;
            }
        }
        for y in 0..n {
            cases += 1;
            let dy = Digits::from_u64(pp, y);
            let sum = dx.add(&dy).map(|s| u128::from(s.to_int()));
            let prod = dx.mul(&dy).map(|s| u128::from(s.to_int()));
            if sum != Ok(add_mod(x.into(), y.into(), n128)) {
                failure = Some(format!("{x} + {y} gave {sum:?}"));
                break 'outer;
            }
            if prod != Ok(mul_mod(x.into(), y.into(), n128)) {
                failure = Some(format!("{x} * {y} gave {prod:?}"));
                break 'outer;
            }
        }
    }
    Check { name: "digit add/neg/mul/inv vs integers mod p^m", cases, failure }
}

fn check_pairs(all: &RingElements) -> Check {
    let universe: Vec<NaiveMatrix> = all.clone().collect();
    let t = sweep(all.clone(), |x| {
        let ex = endo(x);
        for y in &universe {
            let ey = endo(y);
            let sum = ex.add(&ey).map_err(|e| e.to_string())?;
            let prod = ex.mul(&ey).map_err(|e| e.to_string())?;
            if NaiveMatrix::from(&sum) != x.add(y).map_err(|e| e.to_string())? {
                return Err(format!("{ex} + {ey} gave {sum}"));
            }
            if NaiveMatrix::from(&prod) != x.mul(y).map_err(|e| e.to_string())? {
                return Err(format!("{ex} * {ey} gave {prod}"));
            }
        }
        Ok(false)
    });
    Check {
        name: "matrix add/mul vs integer matrices (all pairs)",
        cases: t.cases * universe.len() as u64,
        failure: t.failure,
    }
}

/// Returns the invertibility check and the brute-force unit count.
fn check_units(all: &RingElements) -> (Check, u64) {
    let universe: Vec<NaiveMatrix> = all.clone().collect();
    let t = sweep(all.clone(), |x| {
        let ex = endo(x);
        let brute = find_inverse(x, &universe);
        if ex.is_invertible() != brute.is_some() {
            return Err(format!("{ex}: criterion says {}, search says {}", ex.is_invertible(), brute.is_some()));
        }
        let Some(inv) = brute else {
            if ex.inverse_direct().is_ok() || ex.inverse_via_minpoly().is_ok() {
                return Err(format!("{ex}: non-unit was inverted"));
            }
            return Ok(false);
        };
        for (route, got) in [("direct", ex.inverse_direct()), ("minpoly", ex.inverse_via_minpoly())] {
            match got {
                Ok(g) if NaiveMatrix::from(&g) == inv => {}
                other => return Err(format!("{ex}: {route} inverse {other:?}")),
            }
        }
        Ok(true)
    });
    let check = Check {
        name: "invertibility criterion and both inverse routes vs search",
        cases: t.cases,
        failure: t.failure,
    };
    (check, t.hits)
}

fn check_polys(pp: RingParams, all: &RingElements) -> Check {
    let n = pp.modulus();
    let t = sweep(all.clone(), |x| {
        let ex = endo(x);
        let ann = ex.annihilating_poly().to_int_poly();
        if !x.eval_poly(ann.coeffs()).is_zero() || !ex.eval_poly(&ann).is_zero() {
            return Err(format!("{ex}: {ann} does not annihilate"));
        }
        let min = ex.minimal_poly();
        if !x.eval_poly(min.coeffs()).is_zero() {
            return Err(format!("{ex}: minimal polynomial {min} does not annihilate"));
        }
        // Degree 1 is reported exactly when some x - e kills the matrix.
        let linear = (0..n).any(|e| x.eval_poly(&[-i128::from(e), 1]).is_zero());
        if linear != (min.degree() == Some(1)) {
            return Err(format!("{ex}: minimal polynomial {min}, linear annihilator exists: {linear}"));
        }
        Ok(false)
    });
    Check {
        name: "annihilating and minimal polynomials",
        cases: t.cases,
        failure: t.failure,
    }
}

fn check_action(pp: RingParams, all: &RingElements) -> Check {
    let universe: Vec<NaiveMatrix> = all.clone().collect();
    let gens = [ModulePoint::first_generator(pp), ModulePoint::second_generator(pp)];
    let t = sweep(all.clone(), |x| {
        let ex = endo(x);
        for px in 0..pp.p() {
            for y in 0..pp.modulus() {
                let v = ModulePoint::new(pp, px, y).map_err(|e| e.to_string())?;
                let got = ex.apply(&v).map_err(|e| e.to_string())?;
                if (got.x(), got.y().to_int()) != x.apply(px, y) {
                    return Err(format!("{ex} applied to {v} gave {got}"));
                }
            }
        }
        // Composition: (XY)g = X(Yg) on both generators.
        for y in &universe {
            let ey = endo(y);
            let xy = ex.mul(&ey).map_err(|e| e.to_string())?;
            for g in &gens {
                let lhs = xy.apply(g).map_err(|e| e.to_string())?;
                let rhs = ex.apply(&ey.apply(g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("({ex})({ey}) on {g}: {lhs} vs {rhs}"));
                }
            }
        }
        Ok(false)
    });
    Check {
        name: "action on Z_p x Z_{p^m} and composition law",
        cases: t.cases,
        failure: t.failure,
    }
}

fn check_census(pp: RingParams, all: &RingElements, units: u64) -> Check {
    let failure = match census(pp) {
        Ok(c) if c.ring_size != all.len() as u64 => {
            Some(format!("ring size {} but enumerated {}", c.ring_size, all.len()))
        }
        Ok(c) if c.unit_count != units => {
            Some(format!("unit count {} but search found {units}", c.unit_count))
        }
        Ok(_) => None,
        Err(e) => Some(e.to_string()),
    };
    Check {
        name: "ring size and unit count vs enumeration",
        cases: all.len() as u64,
        failure,
    }
}

/// Every check, provided the ring has at most `budget` elements.
pub fn run(pp: RingParams, budget: u64) -> Result<Vec<Check>, Error> {
    let all = enumerate_ring(pp, budget)?;
    let (units, unit_count) = check_units(&all);
    Ok(vec![
        check_digits(pp),
        check_pairs(&all),
        units,
        check_polys(pp, &all),
        check_action(pp, &all),
        check_census(pp, &all, unit_count),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rings_pass() {
        for (p, m) in [(2, 2), (2, 3), (3, 2)] {
            let pp = RingParams::new(p, m).unwrap();
            for check in run(pp, DEFAULT_BUDGET).unwrap() {
                assert!(check.passed(), "{pp}: {}", check.line());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let pp = RingParams::new(5, 3).unwrap();
        assert!(matches!(run(pp, 1000), Err(Error::BudgetExceeded { required: 15625, .. })));
    }
}
