//! Board and square families.

use rand::seq::SliceRandom;
use rand::Rng;

use super::util::*;
use super::{param, BuiltModel, DataKind, Family, ParamSpec, Params, VarData, WitnessError, WitnessMap};
use crate::model::{BoolLit, Constraint, ConstraintModel, Domain};
use crate::rng;

fn knight_moves(n: usize, cell: usize) -> Vec<usize> {
    let (r, c) = ((cell / n) as i64, (cell % n) as i64);
    let n = n as i64;
    [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]
        .iter()
        .map(|(dr, dc)| (r + dr, c + dc))
        .filter(|&(a, b)| (0..n).contains(&a) && (0..n).contains(&b))
        .map(|(a, b)| (a * n + b) as usize)
        .collect()
}

pub struct KnightTour;

impl Family for KnightTour {
    fn name(&self) -> &'static str {
        "knight_tour"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 3, 8, 5)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n") * pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 0, (n * n) as i64 - 1)?;
        if !all_distinct(w) {
            return Err(violated("a cell is visited twice"));
        }
        if w[0] != 0 {
            return Err(violated("the tour must start at cell 0"));
        }
        for i in 0..w.len() - 1 {
            if !knight_moves(n, w[i] as usize).contains(&(w[i + 1] as usize)) {
                return Err(violated(format!("step {i} is not a knight move")));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let cells = n * n;
        let mut m = ConstraintModel::new();
        let mut t = vec![m.add_var("x[0]", Domain::set([0]))];
        for i in 1..cells {
            t.push(m.int_var(format!("x[{i}]"), 0, cells as i64 - 1));
        }
        m.post(Constraint::AllDifferent(t.clone()));
        for i in 0..cells - 1 {
            for u in 0..cells {
                let mut cl = vec![BoolLit::is_not(t[i], u as i64)];
                cl.extend(knight_moves(n, u).into_iter().map(|v| BoolLit::is(t[i + 1], v as i64)));
                m.post(Constraint::Clause(cl));
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(t),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("cells", s(n * n)), ("cells_minus_1", s(n * n - 1))]
    }
}

pub struct LatinSquareCompletion;

impl Family for LatinSquareCompletion {
    fn name(&self) -> &'static str {
        "latin_square_completion"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 25, 6), param("density_pct", 0, 100, 40), param("noise", 0, 20, 0)];
        P
    }

    fn data_kind(&self) -> DataKind {
        DataKind::Clues
    }

    /// Hides cells of a random Latin square; `noise` random overwrites may make it unsolvable.
    fn sample_data(&self, p: &Params, seed: u64) -> Option<VarData> {
        let n = pu(p, "n");
        let mut r = rng::stream(seed, self.name(), 0);
        let full = random_latin(n, &mut r);
        let clues = mask_clues(&full, pv(p, "density_pct"), pu(p, "noise"), -1, 0, n as i64 - 1, &mut r);
        Some(VarData {
            edges: None,
            clues: Some(clues),
        })
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n") * pu(p, "n"))
    }

    fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 0, n as i64 - 1)?;
        respects_clues(w, data.clues.as_ref(), -1)?;
        if !is_latin(w, n) {
            return Err(violated("a row or column repeats a value"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, data: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let x = grid_vars(&mut m, "x", n, 0, n as i64 - 1);
        post_latin(&mut m, &x, n);
        post_clues(&mut m, &x, data.clues.as_ref(), -1);
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![
            ("n", s(n)),
            ("n_minus_1", s(n - 1)),
            ("cells", s(n * n)),
            ("clues", list(data.clues.as_deref().unwrap_or(&[]))),
        ]
    }
}

/// A magic square of order n (none exists for n = 2).
pub(crate) fn magic_square(n: usize) -> Option<Vec<i64>> {
    if n == 0 || n == 2 {
        return None;
    }
    let mut g = vec![0i64; n * n];
    if n % 2 == 1 {
        let (mut i, mut j) = (0, n / 2);
        for k in 1..=(n * n) as i64 {
            g[i * n + j] = k;
            let (ni, nj) = ((i + n - 1) % n, (j + 1) % n);
            if g[ni * n + nj] != 0 {
                i = (i + 1) % n;
            } else {
                i = ni;
                j = nj;
            }
        }
    } else if n % 4 == 0 {
        let nn = (n * n) as i64;
        for i in 0..n {
            for j in 0..n {
                let v = (i * n + j + 1) as i64;
                let flip = i % 4 == j % 4 || (i % 4) + (j % 4) == 3;
                g[i * n + j] = if flip { nn + 1 - v } else { v };
            }
        }
    } else {
        // quadrant construction from an odd square of half the order
        let h = n / 2;
        let a = magic_square(h)?;
        let hh = (h * h) as i64;
        for i in 0..h {
            for j in 0..h {
                let v = a[i * h + j];
                g[i * n + j] = v;
                g[(i + h) * n + j + h] = v + hh;
                g[i * n + j + h] = v + 2 * hh;
                g[(i + h) * n + j] = v + 3 * hh;
            }
        }
        let k = (n - 2) / 4;
        for i in 0..h {
            let left: Vec<usize> = if i == h / 2 { (1..=k).collect() } else { (0..k).collect() };
            let right = n + 1 - k..n;
            for j in left.into_iter().chain(right) {
                g.swap(i * n + j, (i + h) * n + j);
            }
        }
    }
    Some(g)
}

/// Applies one of the eight board symmetries.
fn dihedral(g: &[i64], n: usize, t: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = match t % 8 {
                0 => (i, j),
                1 => (j, n - 1 - i),
                2 => (n - 1 - i, n - 1 - j),
                3 => (n - 1 - j, i),
                4 => (i, n - 1 - j),
                5 => (n - 1 - i, j),
                6 => (j, i),
                _ => (n - 1 - j, n - 1 - i),
            };
            out[a * n + b] = g[i * n + j];
        }
    }
    out
}

fn magic_constant(n: i64) -> i64 {
    n * (n * n + 1) / 2
}

pub struct MagicSquare;

impl Family for MagicSquare {
    fn name(&self) -> &'static str {
        "magic_square"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 7, 4), param("clue_pct", 0, 100, 0), param("noise", 0, 10, 0)];
        P
    }

    fn data_kind(&self) -> DataKind {
        DataKind::Clues
    }

    /// Clues from a known square under a random symmetry and optional complement.
    fn sample_data(&self, p: &Params, seed: u64) -> Option<VarData> {
        let n = pu(p, "n");
        let nn = (n * n) as i64;
        let mut r = rng::stream(seed, self.name(), 0);
        let full = match magic_square(n) {
            Some(g) => {
                let mut g = dihedral(&g, n, r.gen_range(0..8));
                if r.gen_bool(0.5) {
                    g.iter_mut().for_each(|v| *v = nn + 1 - *v);
                }
                g
            }
            None => vec![0; n * n],
        };
        let clues = mask_clues(&full, pv(p, "clue_pct"), pu(p, "noise"), 0, 1, nn, &mut r);
        Some(VarData {
            edges: None,
            clues: Some(clues),
        })
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n") * pu(p, "n"))
    }

    fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 1, (n * n) as i64)?;
        respects_clues(w, data.clues.as_ref(), 0)?;
        if !all_distinct(w) {
            return Err(violated("values repeat"));
        }
        let magic = magic_constant(n as i64);
        let mut lines: Vec<i64> = Vec::new();
        for i in 0..n {
            lines.push((0..n).map(|j| w[i * n + j]).sum());
            lines.push((0..n).map(|j| w[j * n + i]).sum());
        }
        lines.push((0..n).map(|i| w[i * n + i]).sum());
        lines.push((0..n).map(|i| w[i * n + n - 1 - i]).sum());
        if lines.iter().any(|&l| l != magic) {
            return Err(violated(format!("a line does not sum to {magic}")));
        }
        Ok(())
    }

    fn build(&self, p: &Params, data: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let magic = magic_constant(n as i64);
        let mut m = ConstraintModel::new();
        let x = grid_vars(&mut m, "x", n, 1, (n * n) as i64);
        m.post(Constraint::AllDifferent(x.clone()));
        for i in 0..n {
            sum_eq(&mut m, (0..n).map(|j| (1, x[i * n + j])).collect(), magic);
            sum_eq(&mut m, (0..n).map(|j| (1, x[j * n + i])).collect(), magic);
        }
        sum_eq(&mut m, (0..n).map(|i| (1, x[i * n + i])).collect(), magic);
        sum_eq(&mut m, (0..n).map(|i| (1, x[i * n + n - 1 - i])).collect(), magic);
        post_clues(&mut m, &x, data.clues.as_ref(), 0);
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![
            ("n", s(n)),
            ("n2", s(n * n)),
            ("magic", s(magic_constant(n))),
            ("clues", list(data.clues.as_deref().unwrap_or(&[]))),
        ]
    }
}

pub struct OrthoLatin;

impl Family for OrthoLatin {
    fn name(&self) -> &'static str {
        "ortholatin"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 12, 5)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(2 * pu(p, "n") * pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 0, n as i64 - 1)?;
        let (x, y) = w.split_at(n * n);
        if !is_latin(x, n) || !is_latin(y, n) {
            return Err(violated("X or Y is not a Latin square"));
        }
        let pairs: Vec<i64> = x.iter().zip(y).map(|(a, b)| a * n as i64 + b).collect();
        if !all_distinct(&pairs) {
            return Err(violated("the squares are not orthogonal"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let ni = n as i64;
        let mut m = ConstraintModel::new();
        let x = grid_vars(&mut m, "X", n, 0, ni - 1);
        let y = grid_vars(&mut m, "Y", n, 0, ni - 1);
        post_latin(&mut m, &x, n);
        post_latin(&mut m, &y, n);
        let z = grid_vars(&mut m, "Z", n, 0, ni * ni - 1);
        for c in 0..n * n {
            post_binary_fn(&mut m, x[c], y[c], z[c], |a, b| a * ni + b);
        }
        m.post(Constraint::AllDifferent(z));
        let mut w = x;
        w.extend(y);
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(w),
        })
    }

    fn witness_names(&self, p: &Params) -> Vec<String> {
        let n = pu(p, "n");
        let cell = |k: usize| format!("[{}][{}]", k / n, k % n);
        (0..n * n)
            .map(|k| format!("X{}", cell(k)))
            .chain((0..n * n).map(|k| format!("Y{}", cell(k))))
            .collect()
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![
            ("n", s(n)),
            ("n_minus_1", s(n - 1)),
            ("n2", s(n * n)),
            ("len", s(2 * n * n)),
        ]
    }
}

/// Idempotent quasigroups with x[x[i][j]][x[j][i]] = i.
pub struct Quasigroup;

impl Family for Quasigroup {
    fn name(&self) -> &'static str {
        "quasigroup_idempotent"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 14, 5)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n") * pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 0, n as i64 - 1)?;
        if !is_latin(w, n) {
            return Err(violated("not a Latin square"));
        }
        for i in 0..n {
            if w[i * n + i] != i as i64 {
                return Err(violated(format!("x[{i}][{i}] is not {i}")));
            }
            for j in 0..n {
                let (a, b) = (w[i * n + j] as usize, w[j * n + i] as usize);
                if w[a * n + b] != i as i64 {
                    return Err(violated(format!("identity fails at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let x = grid_vars(&mut m, "x", n, 0, n as i64 - 1);
        post_latin(&mut m, &x, n);
        for i in 0..n {
            post_clues(&mut m, &x[i * n + i..=i * n + i], Some(&vec![i as i64]), -1);
        }
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        m.post(Constraint::Clause(vec![
                            BoolLit::is_not(x[i * n + j], a as i64),
                            BoolLit::is_not(x[j * n + i], b as i64),
                            BoolLit::is(x[a * n + b], i as i64),
                        ]));
                    }
                }
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1)), ("n2", s(n * n))]
    }
}

pub struct Queens;

impl Family for Queens {
    fn name(&self) -> &'static str {
        "queens"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 60, 8)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        in_range(w, 0, pv(p, "n") - 1)?;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] == w[j] || (w[i] - w[j]).abs() == (j - i) as i64 {
                    return Err(violated(format!("queens in rows {i} and {j} attack each other")));
                }
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", n, Domain::range(0, n as i64 - 1));
        m.post(Constraint::AllDifferent(x.clone()));
        for i in 0..n {
            for j in i + 1..n {
                let d = (j - i) as i64;
                for offset in [d, -d] {
                    m.post(Constraint::NotEqual {
                        a: x[i],
                        b: x[j],
                        offset,
                    });
                }
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![("n", s(n)), ("n_minus_1", s(n - 1))]
    }
}

/// Random solved board: the canonical pattern under band, stack and symbol shuffles.
pub(crate) fn random_sudoku<R: Rng>(n: usize, rng: &mut R) -> Vec<i64> {
    let side = n * n;
    let shuffled_lines = |rng: &mut R| -> Vec<usize> {
        let mut bands: Vec<usize> = (0..n).collect();
        bands.shuffle(rng);
        let mut out = Vec::with_capacity(side);
        for b in bands {
            let mut inner: Vec<usize> = (0..n).collect();
            inner.shuffle(rng);
            out.extend(inner.into_iter().map(|i| b * n + i));
        }
        out
    };
    let rows = shuffled_lines(rng);
    let cols = shuffled_lines(rng);
    let mut syms: Vec<i64> = (1..=side as i64).collect();
    syms.shuffle(rng);
    let pattern = |r: usize, c: usize| (n * (r % n) + r / n + c) % side;
    let mut g = vec![0; side * side];
    for i in 0..side {
        for j in 0..side {
            g[i * side + j] = syms[pattern(rows[i], cols[j])];
        }
    }
    g
}

fn sudoku_units(n: usize) -> Vec<Vec<usize>> {
    let side = n * n;
    let mut units = Vec::with_capacity(3 * side);
    for i in 0..side {
        units.push((0..side).map(|j| i * side + j).collect());
        units.push((0..side).map(|j| j * side + i).collect());
    }
    for br in 0..n {
        for bc in 0..n {
            let mut u = Vec::with_capacity(side);
            for i in 0..n {
                for j in 0..n {
                    u.push((br * n + i) * side + bc * n + j);
                }
            }
            units.push(u);
        }
    }
    units
}

pub struct Sudoku;

impl Family for Sudoku {
    fn name(&self) -> &'static str {
        "sudoku"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 5, 3), param("clue_pct", 0, 100, 0), param("noise", 0, 20, 0)];
        P
    }

    fn data_kind(&self) -> DataKind {
        DataKind::OptionalClues
    }

    fn sample_data(&self, p: &Params, seed: u64) -> Option<VarData> {
        let (keep, noise) = (pv(p, "clue_pct"), pu(p, "noise"));
        if keep == 0 && noise == 0 {
            return Some(VarData::default());
        }
        let n = pu(p, "n");
        let side = (n * n) as i64;
        let mut r = rng::stream(seed, self.name(), 0);
        let full = random_sudoku(n, &mut r);
        Some(VarData {
            edges: None,
            clues: Some(mask_clues(&full, keep, noise, 0, 1, side, &mut r)),
        })
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "n").pow(4))
    }

    fn check(&self, p: &Params, data: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 1, (n * n) as i64)?;
        respects_clues(w, data.clues.as_ref(), 0)?;
        for u in sudoku_units(n) {
            let vals: Vec<i64> = u.iter().map(|&c| w[c]).collect();
            if !all_distinct(&vals) {
                return Err(violated("a row, column or block repeats a value"));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, data: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let side = n * n;
        let mut m = ConstraintModel::new();
        let x = grid_vars(&mut m, "x", side, 1, side as i64);
        for u in sudoku_units(n) {
            m.post(Constraint::AllDifferent(u.iter().map(|&c| x[c]).collect()));
        }
        post_clues(&mut m, &x, data.clues.as_ref(), 0);
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, data: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        let side = n * n;
        let clue_block = match &data.clues {
            Some(c) => format!(
                "\n\nPre-filled clues (flat row-major; cell (i,j) at index i*{side}+j; 0 = empty):\n{}",
                list(c)
            ),
            None => String::new(),
        };
        vec![
            ("n", s(n)),
            ("side", s(side)),
            ("cells", s(side * side)),
            ("clue_block", clue_block),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn constructed_magic_squares_are_magic() {
        for n in 3..=10 {
            let g = magic_square(n).unwrap();
            for t in 0..8 {
                let h = dihedral(&g, n, t);
                let p = params(&[("n", n as i64), ("clue_pct", 0), ("noise", 0)]);
                if n <= 7 {
                    assert_eq!(MagicSquare.check(&p, &VarData::default(), &h), Ok(()), "n = {n}, t = {t}");
                }
                let magic = magic_constant(n as i64);
                assert!((0..n).all(|i| (0..n).map(|j| h[i * n + j]).sum::<i64>() == magic));
                assert_eq!((0..n).map(|i| h[i * n + i]).sum::<i64>(), magic);
                assert_eq!((0..n).map(|i| h[i * n + n - 1 - i]).sum::<i64>(), magic);
            }
        }
        assert!(magic_square(2).is_none());
    }

    #[test]
    fn random_sudoku_is_valid() {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for n in 2..=4 {
            let g = random_sudoku(n, &mut r);
            let p = params(&[("n", n as i64), ("clue_pct", 0), ("noise", 0)]);
            assert_eq!(Sudoku.check(&p, &VarData::default(), &g), Ok(()));
        }
    }

    #[test]
    fn knight_corner_moves() {
        assert_eq!(knight_moves(5, 0).len(), 2);
        assert_eq!(knight_moves(5, 12).len(), 8);
    }
}
