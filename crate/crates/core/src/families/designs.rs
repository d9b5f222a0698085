//! Combinatorial designs, dice and edge colorings.

use super::util::*;
use super::{param, BuiltModel, Family, ParamSpec, Params, VarData, WitnessError, WitnessMap};
use crate::model::{BoolLit, Cmp, Constraint, ConstraintModel, Domain, VarId};

pub struct AntimagicSquare;

/// Cell indices of each line: rows, columns, main diagonal, anti-diagonal.
fn square_lines(n: usize) -> Vec<Vec<usize>> {
    let mut lines = Vec::with_capacity(2 * n + 2);
    for i in 0..n {
        lines.push((0..n).map(|j| i * n + j).collect());
    }
    for j in 0..n {
        lines.push((0..n).map(|i| i * n + j).collect());
    }
    lines.push((0..n).map(|i| i * n + i).collect());
    lines.push((0..n).map(|i| i * n + n - 1 - i).collect());
    lines
}

impl Family for AntimagicSquare {
    fn name(&self) -> &'static str {
        "antimagic_square"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 8, 4)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        let n = pu(p, "n");
        Some(n * n + 2 * n + 2)
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        let (grid, sums) = w.split_at(n * n);
        in_range(grid, 1, (n * n) as i64)?;
        if !all_distinct(grid) {
            return Err(violated("grid values repeat"));
        }
        for (k, line) in square_lines(n).iter().enumerate() {
            let actual: i64 = line.iter().map(|&c| grid[c]).sum();
            if actual != sums[k] {
                return Err(violated(format!("sum entry {k} is {} but the line sums to {actual}", sums[k])));
            }
        }
        let lo = *sums.iter().min().unwrap();
        let hi = *sums.iter().max().unwrap();
        if !all_distinct(sums) || hi - lo != 2 * n as i64 + 1 {
            return Err(violated("line sums are not consecutive integers"));
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let n2 = (n * n) as i64;
        let ni = n as i64;
        let (smin, smax) = (ni * (ni + 1) / 2, ni * (2 * n2 - ni + 1) / 2);
        let mut m = ConstraintModel::new();
        let grid = vec_vars(&mut m, "x", n * n, Domain::range(1, n2));
        m.post(Constraint::AllDifferent(grid.clone()));
        let low = m.int_var("low", smin, smax);
        let mut sums = Vec::new();
        for (k, line) in square_lines(n).iter().enumerate() {
            let sv = m.int_var(format!("s[{k}]"), smin, smax);
            let mut terms = vec![(-1, sv)];
            terms.extend(line.iter().map(|&c| (1, grid[c])));
            sum_eq(&mut m, terms, 0);
            m.post(Constraint::LinearSum {
                terms: vec![(1, sv), (-1, low)],
                cmp: Cmp::Ge,
                bound: 0,
            });
            m.post(Constraint::LinearSum {
                terms: vec![(1, sv), (-1, low)],
                cmp: Cmp::Le,
                bound: 2 * ni + 1,
            });
            sums.push(sv);
        }
        m.post(Constraint::AllDifferent(sums.clone()));
        let mut w = grid;
        w.extend(sums);
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(w),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![
            ("n", s(n)),
            ("n2", s(n * n)),
            ("n_minus_1", s(n - 1)),
            ("lines", s(2 * n + 2)),
            ("spread", s(2 * n + 1)),
            ("len", s(n * n + 2 * n + 2)),
        ]
    }
}

pub struct Bibd;

impl Bibd {
    /// (b, r) for integral parameter sets.
    fn derived(p: &Params) -> Option<(i64, i64)> {
        let (v, k, l) = (pv(p, "v"), pv(p, "k"), pv(p, "lambda"));
        if k < 2 || (l * (v - 1)) % (k - 1) != 0 {
            return None;
        }
        let r = l * (v - 1) / (k - 1);
        if (v * r) % k != 0 {
            return None;
        }
        Some((v * r / k, r))
    }
}

impl Family for Bibd {
    fn name(&self) -> &'static str {
        "bibd"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("v", 3, 40, 7), param("k", 2, 20, 3), param("lambda", 1, 10, 1)];
        P
    }

    fn validate(&self, p: &Params) -> Result<(), String> {
        if pv(p, "k") >= pv(p, "v") {
            return Err("k must be smaller than v".into());
        }
        match Self::derived(p) {
            None => Err("b and r must be integral".into()),
            Some((b, _)) if b * pv(p, "v") > 4000 => Err("incidence matrix too large".into()),
            Some(_) => Ok(()),
        }
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        let (b, _) = Self::derived(p)?;
        Some((pv(p, "v") * b) as usize)
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let (v, k, l) = (pu(p, "v"), pv(p, "k"), pv(p, "lambda"));
        let (b, r) = Self::derived(p).unwrap();
        let b = b as usize;
        in_range(w, 0, 1)?;
        let row = |i: usize| &w[i * b..(i + 1) * b];
        for i in 0..v {
            if row(i).iter().sum::<i64>() != r {
                return Err(violated(format!("row {i} does not sum to {r}")));
            }
        }
        for j in 0..b {
            if (0..v).map(|i| w[i * b + j]).sum::<i64>() != k {
                return Err(violated(format!("column {j} does not sum to {k}")));
            }
        }
        for i in 0..v {
            for h in i + 1..v {
                let dot: i64 = row(i).iter().zip(row(h)).map(|(a, c)| a * c).sum();
                if dot != l {
                    return Err(violated(format!("rows {i} and {h} share {dot} blocks")));
                }
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let (v, k, l) = (pu(p, "v"), pv(p, "k"), pv(p, "lambda"));
        let (b, r) = Self::derived(p)?;
        let b = b as usize;
        let mut m = ConstraintModel::new();
        let mut x: Vec<VarId> = Vec::with_capacity(v * b);
        for i in 0..v {
            for j in 0..b {
                x.push(m.bool_var(format!("x[{i}][{j}]")));
            }
        }
        for i in 0..v {
            sum_eq(&mut m, (0..b).map(|j| (1, x[i * b + j])).collect(), r);
        }
        for j in 0..b {
            sum_eq(&mut m, (0..v).map(|i| (1, x[i * b + j])).collect(), k);
        }
        for i in 0..v {
            for h in i + 1..v {
                m.post(Constraint::ProductPairSum {
                    pairs: (0..b).map(|j| (x[i * b + j], x[h * b + j])).collect(),
                    cmp: Cmp::Eq,
                    bound: l,
                });
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let (b, r) = Self::derived(p).unwrap_or((0, 0));
        let v = pv(p, "v");
        vec![
            ("v", s(v)),
            ("k", s(pv(p, "k"))),
            ("lambda", s(pv(p, "lambda"))),
            ("b", s(b)),
            ("r", s(r)),
            ("len", s(v * b)),
        ]
    }
}

/// `max_value` 0 selects the customary 2 * faces - 1.
pub struct NonTransitiveDice;

impl NonTransitiveDice {
    fn max_value(p: &Params) -> i64 {
        match pv(p, "max_value") {
            0 => 2 * pv(p, "faces") - 1,
            v => v,
        }
    }
}

impl Family for NonTransitiveDice {
    fn name(&self) -> &'static str {
        "non_transitive_dice"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[
            param("dice", 2, 8, 3),
            param("faces", 1, 10, 4),
            param("max_value", 0, 30, 0),
        ];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "dice") * pu(p, "faces"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let (d, f) = (pu(p, "dice"), pu(p, "faces"));
        in_range(w, 0, Self::max_value(p))?;
        let die = |i: usize| &w[i * f..(i + 1) * f];
        for i in 0..d {
            if die(i).windows(2).any(|x| x[0] > x[1]) {
                return Err(violated(format!("faces of die {i} are not sorted")));
            }
        }
        let half = (f * f / 2) as usize;
        for i in 0..d {
            let (a, b) = (die(i), die((i + 1) % d));
            let wins = a.iter().map(|x| b.iter().filter(|y| x > y).count()).sum::<usize>();
            if wins <= half {
                return Err(violated(format!("die {i} wins only {wins} of {} pairs", f * f)));
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let (d, f) = (pu(p, "dice"), pu(p, "faces"));
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", d * f, Domain::range(0, Self::max_value(p)));
        for i in 0..d {
            for a in 0..f.saturating_sub(1) {
                m.post(Constraint::LinearSum {
                    terms: vec![(1, x[i * f + a + 1]), (-1, x[i * f + a])],
                    cmp: Cmp::Ge,
                    bound: 0,
                });
            }
        }
        for i in 0..d {
            let j = (i + 1) % d;
            let mut terms = Vec::with_capacity(f * f);
            for a in 0..f {
                for b in 0..f {
                    let g = m.bool_var(format!("beats[{i}][{a}][{b}]"));
                    post_binary_fn(&mut m, x[i * f + a], x[j * f + b], g, |u, v| i64::from(u > v));
                    terms.push((1, g));
                }
            }
            m.post(Constraint::LinearSum {
                terms,
                cmp: Cmp::Ge,
                bound: (f * f / 2) as i64 + 1,
            });
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(x),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let (d, f) = (pv(p, "dice"), pv(p, "faces"));
        vec![
            ("dice", s(d)),
            ("faces", s(f)),
            ("max_value", s(Self::max_value(p))),
            ("half", s(f * f / 2)),
            ("pairs", s(f * f)),
            ("len", s(d * f)),
        ]
    }
}

/// Two-colorings of the edges of K_n avoiding a red K_r and a blue K_s.
pub struct RamseyEdgeColoring;

impl Family for RamseyEdgeColoring {
    fn name(&self) -> &'static str {
        "ramsey"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("n", 2, 30, 5), param("r", 2, 8, 3), param("s", 2, 8, 3)];
        P
    }

    fn validate(&self, p: &Params) -> Result<(), String> {
        let n = pu(p, "n");
        if binomial(n, pu(p, "r")) + binomial(n, pu(p, "s")) > 3_000_000 {
            return Err("too many cliques to forbid".into());
        }
        Ok(())
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        let n = pu(p, "n");
        Some(n * (n - 1) / 2)
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let n = pu(p, "n");
        in_range(w, 0, 1)?;
        for (size, color, name) in [(pu(p, "r"), 0, "red"), (pu(p, "s"), 1, "blue")] {
            for set in combinations(n, size) {
                let mono = set.iter().enumerate().all(|(a, &i)| {
                    set[a + 1..].iter().all(|&j| w[pair_index(n, i, j)] == color)
                });
                if mono {
                    return Err(violated(format!("{name} clique on {set:?}")));
                }
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let n = pu(p, "n");
        let mut m = ConstraintModel::new();
        let mut e = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                e.push(m.bool_var(format!("e[{i}][{j}]")));
            }
        }
        for (size, color) in [(pu(p, "r"), 0), (pu(p, "s"), 1)] {
            for set in combinations(n, size) {
                let mut cl = Vec::new();
                for (a, &i) in set.iter().enumerate() {
                    for &j in &set[a + 1..] {
                        cl.push(BoolLit::is_not(e[pair_index(n, i, j)], color));
                    }
                }
                m.post(Constraint::Clause(cl));
            }
        }
        Some(BuiltModel {
            model: m,
            witness: WitnessMap::Positional(e),
        })
    }

    fn prompt_vars(&self, p: &Params, _: &VarData) -> Vec<(&'static str, String)> {
        let n = pv(p, "n");
        vec![
            ("kname", format!("K_{n}")),
            ("r", s(pv(p, "r"))),
            ("s", s(pv(p, "s"))),
            ("len", s(n * (n - 1) / 2)),
        ]
    }
}

pub struct SocialGolfers;

impl Family for SocialGolfers {
    fn name(&self) -> &'static str {
        "social_golfers"
    }

    fn params(&self) -> &'static [ParamSpec] {
        const P: &[ParamSpec] = &[param("groups", 1, 8, 3), param("size", 1, 6, 3), param("weeks", 1, 12, 3)];
        P
    }

    fn witness_len(&self, p: &Params) -> Option<usize> {
        Some(pu(p, "groups") * pu(p, "size") * pu(p, "weeks"))
    }

    fn check(&self, p: &Params, _: &VarData, w: &[i64]) -> Result<(), WitnessError> {
        let (g, size, weeks) = (pv(p, "groups"), pv(p, "size"), pu(p, "weeks"));
        let players = (g * size) as usize;
        in_range(w, 0, g - 1)?;
        for wk in 0..weeks {
            let week = &w[wk * players..(wk + 1) * players];
            for grp in 0..g {
                if week.iter().filter(|&&x| x == grp).count() as i64 != size {
                    return Err(violated(format!("group {grp} in week {wk} does not have {size} players")));
                }
            }
        }
        for a in 0..players {
            for b in a + 1..players {
                let meets = (0..weeks)
                    .filter(|&wk| w[wk * players + a] == w[wk * players + b])
                    .count();
                if meets > 1 {
                    return Err(violated(format!("golfers {a} and {b} meet {meets} times")));
                }
            }
        }
        Ok(())
    }

    fn build(&self, p: &Params, _: &VarData) -> Option<BuiltModel> {
        let (g, size, weeks) = (pv(p, "groups"), pv(p, "size"), pu(p, "weeks"));
        let players = (g * size) as usize;
        let mut m = ConstraintModel::new();
        let x = vec_vars(&mut m, "x", weeks * players, Domain::range(0, g - 1));
        for wk in 0..weeks {
            let week: Vec<VarId> = x[wk * players..(wk + 1) * players].to_vec();
            for grp in 0..g {
                m.post(Constraint::CardinalityOfValue {
                    vars: week.clone(),
                    value: grp,
                    cmp: Cmp::Eq,
                    bound: size,
                });
            }
        }
        if weeks > 1 {
            for a in 0..players {
                for b in a + 1..players {
                    let mut meets = Vec::with_capacity(weeks);
                    for wk in 0..weeks {
                        // upper bound on "same group" suffices under the at-most-one sum
                        let mt = m.bool_var(format!("meet[{wk}][{a}][{b}]"));
                        for grp in 0..g {
                            m.post(Constraint::Clause(vec![
                                BoolLit::is_not(x[wk * players + a], grp),
                                BoolLit::is_not(x[wk * players + b], grp),
                                BoolLit::is(mt, 1),
                            ]));
                        }
                        meets.push((1, mt));
                    }
                    m.post(Constraint::LinearSum {
                        terms: meets,
                        cmp: Cmp::Le,
                        bound: 1,
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
        let (g, size, weeks) = (pv(p, "groups"), pv(p, "size"), pv(p, "weeks"));
        vec![
            ("players", s(g * size)),
            ("groups", s(g)),
            ("groups_minus_1", s(g - 1)),
            ("size", s(size)),
            ("weeks", s(weeks)),
            ("len", s(g * size * weeks)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_cover_rows_columns_diagonals() {
        let l = square_lines(3);
        assert_eq!(l.len(), 8);
        assert_eq!(l[6], vec![0, 4, 8]);
        assert_eq!(l[7], vec![2, 4, 6]);
    }

    #[test]
    fn efron_style_dice() {
        let p: Params = [("dice", 3), ("faces", 3), ("max_value", 0)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        // 2,4,9 / 1,6,8 / 3,5,7 : each beats the next 5 of 9
        let w = [2, 4, 9, 1, 6, 8, 3, 5, 7];
        assert!(NonTransitiveDice.check(&p, &VarData::default(), &w).is_err()); // max 5
        let mut q = p.clone();
        q.insert("max_value".into(), 9);
        assert!(NonTransitiveDice.check(&q, &VarData::default(), &w).is_ok());
    }
}
