use std::fmt;

use serde_json::{json, Value};

use super::{commutator, int, mul, poly_strings, scaled, VerificationCase, Workbench};
use crate::folding::{FoldingError, FoldingSpec, RelativeRootSystem};
use crate::relcalc::NMapTable;
use crate::rootcore::{add_coords, scale_coords};
use crate::QPoly;

/// The rank-two case analyses for multiply laced absolute types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// Long roots of split `F4` as single commutators of long roots.
    F4Long { k: u32 },
    /// `B_l`, `J = {alpha1, alpha2}`: long root pairs over every split `A = B + C`.
    BlPairs { l: usize },
    /// `C_l`, `J = {alpha1, alpha2}` (type `BC2`): short fibers and the
    /// two-step chain for the long root.
    ClBc2 { l: usize, k: u32 },
    /// `C_l`, `J = {alpha_{l/2}, alpha_l}` (type `C2`): product formulas for
    /// the short and the long relative root.
    ClC2 { l: usize, k: u32 },
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::F4Long { k } => write!(f, "F4_long/k={k}"),
            Schema::BlPairs { l } => write!(f, "Bl_pairs/l={l}"),
            Schema::ClBc2 { l, k } => write!(f, "Cl_BC2/l={l}/k={k}"),
            Schema::ClC2 { l, k } => write!(f, "Cl_C2/l={l}/k={k}"),
        }
    }
}

pub fn verify_case_schemas(schema: Schema) -> Vec<VerificationCase> {
    match schema {
        Schema::F4Long { k } => f4_long(k),
        Schema::BlPairs { l } => bl_pairs(l),
        Schema::ClBc2 { l, k } => cl_bc2(l, k),
        Schema::ClC2 { l, k } => cl_c2(l, k),
    }
}

fn bad_input(id: String, spec: String, msg: String) -> Vec<VerificationCase> {
    vec![VerificationCase::new(id, spec).finish(Err(msg))]
}

fn collinear(a: &[i32], b: &[i32]) -> bool {
    (0..a.len()).all(|p| (0..a.len()).all(|q| a[p] * b[q] == a[q] * b[p]))
}

fn f4_long(k: u32) -> Vec<VerificationCase> {
    let spec = "F4 gamma=trivial levi=all".to_string();
    let wb = match Workbench::new(&spec, &["v".to_string()]) {
        Ok(wb) => wb,
        Err(e) => return bad_input(format!("cases/F4_long/k={k}"), spec, e.to_string()),
    };
    if k < 2 {
        return bad_input(format!("cases/F4_long/k={k}"), spec, "need k >= 2".into());
    }
    let rs = wb.sr.rrs().root_system();
    let cb = wb.sr.cb();
    let v = wb.var("v");
    let mut out = Vec::new();
    for a in rs.roots().iter().filter(|r| r.is_long()) {
        let case = VerificationCase::new(format!("cases/F4_long/{:?}/k={k}", a.coords), spec.clone())
            .param("k", k)
            .param("root", format!("{:?}", a.coords));
        let pick = rs.roots().iter().filter(|b| b.is_long()).find_map(|b| {
            let c: Vec<i32> = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
            let c_idx = rs.index_of(&c)?;
            if !rs.root(c_idx).is_long() || collinear(&b.coords, &c) {
                return None;
            }
            let other = (1..=3).flat_map(|i| (1..=3).map(move |j| (i, j))).any(|(i, j)| {
                (i, j) != (1, 1) && rs.contains(&add_coords(&scale_coords(i, &b.coords), &scale_coords(j, &c)))
            });
            (!other).then(|| (b.coords.clone(), c))
        });
        out.push(case.finish((|| {
            let (b, c) = pick.ok_or("no pair of long roots with B + C = A")?;
            let n = cb.n_coords(&b, &c).map_err(|e| e.to_string())?;
            if n.abs() != 1 {
                return Err(format!("structure constant {n} is not a unit"));
            }
            let u10 = int(1);
            let u01 = scaled(&v, n);
            let lhs = commutator(
                &wb.x1(&b, mul(&wb.var("Z"), &u10)),
                &wb.x1(&c, mul(&wb.z_pow(k - 1), &u01)),
            );
            if !wb.same(&lhs, &wb.x1(&a.coords, mul(&wb.z_pow(k), &v))) {
                return Err("X_A(Z^k v) differs from the commutator".into());
            }
            Ok(json!({ "B": b, "C": c, "u10": u10.to_string(), "u01": u01.to_string() }))
        })()));
    }
    out
}

fn bl_pairs(l: usize) -> Vec<VerificationCase> {
    let spec = format!("B{l} gamma=trivial levi=1,2");
    let id = format!("cases/Bl_pairs/l={l}");
    if l < 3 {
        return bad_input(id, spec, "need l >= 3".into());
    }
    let wb = match Workbench::new(&spec, &[]) {
        Ok(wb) => wb,
        Err(e) => return bad_input(id, spec, e.to_string()),
    };
    let rrs = wb.sr.rrs();
    let rs = rrs.root_system();
    let mut out = Vec::new();
    for a in rrs.roots() {
        let case = VerificationCase::new(format!("{id}/{a:?}"), spec.clone())
            .param("l", l)
            .param("root", format!("{a:?}"));
        out.push(case.finish((|| {
            let mut triples = Vec::new();
            for b in rrs.roots() {
                let c: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                if !rrs.contains(&c) || collinear(b, &c) {
                    continue;
                }
                let fb = rrs.fiber_of(b).expect("root");
                let fc = rrs.fiber_of(&c).expect("root");
                let hit = fb.iter().find_map(|&x| {
                    fc.iter().find_map(|&y| {
                        let (rx, ry) = (rs.root(x), rs.root(y));
                        (rx.is_long() && ry.is_long() && rs.contains(&add_coords(&rx.coords, &ry.coords)))
                            .then(|| (rx.coords.clone(), ry.coords.clone()))
                    })
                });
                let (beta, gamma) = hit.ok_or_else(|| format!("no long pair over B={b:?}, C={c:?}"))?;
                triples.push(json!({ "B": b, "C": c, "beta": beta, "gamma": gamma }));
            }
            Ok(json!({ "pairs": triples }))
        })()));
    }
    out
}

fn cl_bc2(l: usize, k: u32) -> Vec<VerificationCase> {
    let spec = format!("C{l} gamma=trivial levi=1,2");
    let id = format!("cases/Cl_BC2/l={l}");
    if l < 3 || k < 4 {
        return bad_input(id, spec, "need l >= 3 and k >= 4".into());
    }
    let wb = match Workbench::new(&spec, &["v".to_string()]) {
        Ok(wb) => wb,
        Err(e) => return bad_input(id, spec, e.to_string()),
    };
    let rrs = wb.sr.rrs();
    let rs = rrs.root_system();
    let is_long = |a: &[i32]| {
        a.iter().all(|x| x % 2 == 0) && rrs.contains(&a.iter().map(|x| x / 2).collect::<Vec<_>>())
    };
    let fibers = VerificationCase::new(format!("{id}/short-fibers"), spec.clone())
        .param("l", l)
        .finish((|| {
            let mut checked = 0;
            for a in rrs.roots().iter().filter(|a| !is_long(a)) {
                if rrs.fiber_of(a).unwrap().iter().any(|&g| rs.root(g).is_long()) {
                    return Err(format!("{a:?} has a long root in its fiber"));
                }
                checked += 1;
            }
            Ok(json!({ "nonLongRelativeRoots": checked }))
        })());
    let chain = VerificationCase::new(format!("{id}/chain/k={k}"), spec.clone())
        .param("l", l)
        .param("k", k)
        .param("root", "2A1+2A2")
        .finish(bc2_chain(&wb, k));
    vec![fibers, chain]
}

/// `X_A(Z^k v) = [X_{A1}(Z u1), X_{2A2}(Z^{k-2} u2)] [X_{A1+A2}(Z u4), X_{A2}(Z^{k-3} u5)]`
/// for `A = 2A1 + 2A2`, the second commutator realizing `X_{A1+2A2}(Z^{k-1} u3)`.
fn bc2_chain(wb: &Workbench, k: u32) -> Result<Value, String> {
    let rrs = wb.sr.rrs();
    // A2 is the extra-short simple relative root
    let (a1, a2) = if rrs.contains(&[0, 2]) {
        (vec![1, 0], vec![0, 1])
    } else {
        (vec![0, 1], vec![1, 0])
    };
    let two_a2 = scale_coords(2, &a2);
    let s12 = add_coords(&a1, &a2);
    let s122 = add_coords(&a1, &two_a2);
    let a = scale_coords(2, &s12);
    for r in [&a1, &two_a2, &s122, &a] {
        if wb.sr.fiber(r).map_err(|e| e.to_string())?.len() != 1 {
            return Err(format!("fiber of {r:?} is not a single root"));
        }
    }
    let v = wb.var("v");
    let z = wb.var("Z");
    let err = |e: crate::relcalc::RelError| e.to_string();

    let t1 = wb.sr.nmaps(&a1, &two_a2).map_err(err)?;
    let n11 = t1.entry(1, 1).ok_or("no N11 for (A1, 2A2)")?;
    let n21 = t1.entry(2, 1).ok_or("no N21 for (A1, 2A2)")?;
    let c11 = t1.coefficient(n11, 0, &[(0, 1)], &[(0, 1)]);
    let c21 = t1.coefficient(n21, 0, &[(0, 2)], &[(0, 1)]);
    if c21.abs() != 1 {
        return Err(format!("N21 coefficient {c21} is not a unit"));
    }
    let u1 = int(1);
    let u2 = scaled(&v, c21);
    let u3 = scaled(&v, -c11 * c21);

    let t2 = wb.sr.nmaps(&s12, &a2).map_err(err)?;
    let m = t2.entry(1, 1).ok_or("no N11 for (A1+A2, A2)")?;
    let n4 = wb.sr.fiber(&s12).map_err(err)?.len();
    let n5 = wb.sr.fiber(&a2).map_err(err)?.len();
    let (ia, ib, c) = (0..n4)
        .flat_map(|x| (0..n5).map(move |y| (x, y)))
        .find_map(|(x, y)| {
            let c = t2.coefficient(m, 0, &[(x, 1)], &[(y, 1)]);
            (c.abs() == 1).then_some((x, y, c))
        })
        .ok_or("N11 for (A1+A2, A2) has no unit coefficient")?;
    let u4: Vec<QPoly> = (0..n4)
        .map(|x| if x == ia { scaled(&mul(&z, &u3), c) } else { int(0) })
        .collect();
    let u5: Vec<QPoly> = (0..n5).map(|y| int((y == ib) as i64)).collect();

    let mut lhs = commutator(&wb.x1(&a1, mul(&z, &u1)), &wb.x1(&two_a2, mul(&wb.z_pow(k - 2), &u2)));
    let zu4: Vec<QPoly> = u4.iter().map(|p| mul(&z, p)).collect();
    let zu5: Vec<QPoly> = u5.iter().map(|p| mul(&wb.z_pow(k - 3), p)).collect();
    let second = commutator(&wb.x(&s12, &zu4), &wb.x(&a2, &zu5));
    // the second commutator alone is X_{A1+2A2}(Z^{k-1} u3)
    if !wb.same(&second, &wb.x1(&s122, mul(&wb.z_pow(k - 1), &u3))) {
        return Err("[X_{A1+A2}(Z u4), X_{A2}(Z^{k-3} u5)] differs from X_{A1+2A2}(Z^{k-1} u3)".into());
    }
    lhs.extend(second);
    if !wb.same(&lhs, &wb.x1(&a, mul(&wb.z_pow(k), &v))) {
        return Err("chain does not reproduce X_A(Z^k v)".into());
    }
    Ok(json!({
        "A1": a1, "A2": a2,
        "u1": u1.to_string(), "u2": u2.to_string(), "u3": u3.to_string(),
        "u4": poly_strings(&u4), "u5": poly_strings(&u5),
    }))
}

/// A commutator `[X_{A1}(Z e_a), X_{B}(Z^m lambda e_b)]` with `B = A2`
/// (`mixed = false`) or `B = A1 + A2`; `image` is its value for `lambda = 1`
/// in `V_{A1+A2} + V_{2A1+A2}`.
#[derive(Debug, Clone)]
struct Atom {
    mixed: bool,
    a: usize,
    b: usize,
    image: Vec<i64>,
}

fn atoms(f: &NMapTable, m: &NMapTable, d1: usize, d2: usize, with_mixed: bool) -> Vec<Atom> {
    let mut out = Vec::new();
    let nu = f.u_vars().len();
    let n11 = f.entry(1, 1);
    let n21 = f.entry(2, 1);
    for a in 0..nu {
        for b in 0..f.v_vars().len() {
            let mut image = vec![0; d1 + d2];
            for k in 0..d1 {
                image[k] = n11.map_or(0, |e| f.coefficient(e, k, &[(a, 1)], &[(b, 1)]));
            }
            for k in 0..d2 {
                image[d1 + k] = n21.map_or(0, |e| f.coefficient(e, k, &[(a, 2)], &[(b, 1)]));
            }
            out.push(Atom { mixed: false, a, b, image });
        }
    }
    if with_mixed {
        if let Some(e) = m.entry(1, 1) {
            for a in 0..nu {
                for b in 0..m.v_vars().len() {
                    let mut image = vec![0; d1 + d2];
                    for k in 0..d2 {
                        image[d1 + k] = m.coefficient(e, k, &[(a, 1)], &[(b, 1)]);
                    }
                    out.push(Atom { mixed: true, a, b, image });
                }
            }
        }
    }
    out
}

fn unit_at(image: &[i64], t: usize) -> Option<i64> {
    (image[t].abs() == 1 && image.iter().enumerate().all(|(i, &x)| i == t || x == 0)).then_some(image[t])
}

/// Integer combination of atoms equal to the unit vector `t`: one atom
/// hitting `t` with a unit, plus clean atoms cancelling its other components.
fn solve(atoms: &[Atom], t: usize) -> Option<Vec<(usize, i64)>> {
    if let Some(i) = atoms.iter().position(|x| unit_at(&x.image, t).is_some()) {
        return Some(vec![(i, atoms[i].image[t])]);
    }
    'outer: for (i, x) in atoms.iter().enumerate() {
        if x.image[t].abs() != 1 {
            continue;
        }
        let s = x.image[t];
        let mut combo = vec![(i, s)];
        for (d, &val) in x.image.iter().enumerate() {
            if d == t || val == 0 {
                continue;
            }
            // cancel s * val at d
            let Some(j) = atoms.iter().position(|y| unit_at(&y.image, d).is_some()) else {
                continue 'outer;
            };
            combo.push((j, -s * val * atoms[j].image[d]));
        }
        return Some(combo);
    }
    None
}

fn cl_c2(l: usize, k: u32) -> Vec<VerificationCase> {
    let spec = format!("C{l} gamma=trivial levi={},{l}", l / 2);
    let id = format!("cases/Cl_C2/l={l}");
    if l < 4 || !l.is_multiple_of(2) || k < 3 {
        return bad_input(id, format!("C{l}"), "need even l >= 4 and k >= 3".into());
    }
    let (a1, a2, s, lg) = (vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]);
    let prep = (|| {
        let d1 = fiber_len(&spec, &s)?;
        let d2 = fiber_len(&spec, &lg)?;
        let names: Vec<String> = (0..d1.max(d2)).map(|i| format!("v{i}")).collect();
        let wb = Workbench::new(&spec, &names).map_err(|e| e.to_string())?;
        let f = wb.sr.nmaps(&a1, &a2).map_err(|e| e.to_string())?;
        let m = wb.sr.nmaps(&a1, &s).map_err(|e| e.to_string())?;
        Ok::<_, String>((wb, f, m, d1, d2))
    })();
    let (wb, f, m, d1, d2) = match prep {
        Ok(x) => x,
        Err(e) => return bad_input(id, spec, e),
    };
    let mut out = Vec::new();
    for (label, target, offset, dim, with_mixed) in
        [("short", &s, 0, d1, false), ("long", &lg, d1, d2, true)]
    {
        let case = VerificationCase::new(format!("{id}/{label}/k={k}"), spec.clone())
            .param("l", l)
            .param("k", k)
            .param("root", if label == "short" { "A1+A2" } else { "2A1+A2" });
        let res = (|| {
            let atoms = atoms(&f, &m, d1, d2, with_mixed);
            let v: Vec<QPoly> = (0..dim).map(|i| wb.var(&format!("v{i}"))).collect();
            // exponent of Z in the second argument of each kind of factor
            let (zf, zm) = if label == "short" { (k - 1, k - 1) } else { (k - 2, k - 1) };
            let mut mixed_words = Vec::new();
            let mut plain_words = Vec::new();
            let mut factors = Vec::new();
            for t in 0..dim {
                let combo = solve(&atoms, offset + t).ok_or_else(|| format!("no witness for coordinate {t}"))?;
                for (i, c) in combo {
                    let at = &atoms[i];
                    let (second, zpow) = if at.mixed { (&s, zm) } else { (&a2, zf) };
                    let nb = wb.sr.fiber(second).map_err(|e| e.to_string())?.len();
                    let na = wb.sr.fiber(&a1).map_err(|e| e.to_string())?.len();
                    let first: Vec<QPoly> =
                        (0..na).map(|x| if x == at.a { wb.var("Z") } else { int(0) }).collect();
                    let lambda = scaled(&v[t], c);
                    let arg: Vec<QPoly> = (0..nb)
                        .map(|y| if y == at.b { mul(&wb.z_pow(zpow), &lambda) } else { int(0) })
                        .collect();
                    let w = commutator(&nonzero(wb.x(&a1, &first)), &nonzero(wb.x(second, &arg)));
                    factors.push(json!({
                        "with": if at.mixed { "A1+A2" } else { "A2" },
                        "v": poly_strings(&first),
                        "u": poly_strings(&arg),
                    }));
                    if at.mixed {
                        mixed_words.push(w);
                    } else {
                        plain_words.push(w);
                    }
                }
            }
            let lhs: Vec<_> = mixed_words.into_iter().chain(plain_words).flatten().collect();
            let zkv: Vec<QPoly> = v.iter().map(|x| mul(&wb.z_pow(k), x)).collect();
            if !wb.same(&lhs, &wb.x(target, &zkv)) {
                return Err("product of commutators differs from X_A(Z^k v)".into());
            }
            let mut w = json!({ "factors": factors });
            if label == "long" {
                w["note"] = json!("target taken as A = 2A1+A2 (the text names it C)");
            }
            Ok(w)
        })();
        out.push(case.finish(res));
    }
    out
}

fn nonzero(word: Vec<(usize, QPoly)>) -> Vec<(usize, QPoly)> {
    word.into_iter().filter(|(_, t)| !t.is_zero()).collect()
}

/// Fiber size of `a` in a folding given by its text spec.
fn fiber_len(spec: &str, a: &[i32]) -> Result<usize, String> {
    let fs: FoldingSpec = spec.parse().map_err(|e: FoldingError| e.to_string())?;
    RelativeRootSystem::new(fs)
        .fiber_of(a)
        .map(<[usize]>::len)
        .ok_or_else(|| format!("{a:?} is not a relative root"))
}
