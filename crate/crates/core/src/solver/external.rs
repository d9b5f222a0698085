//! External solver invocation over DIMACS files with competition-style output.

use std::io::Read;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use crate::cnf::CnfFormula;
use crate::error::SolverError;
use crate::solver::{Effort, SolveResult, SolveStatus};

fn failure(msg: impl Into<String>) -> SolverError {
    SolverError::BackendFailure(msg.into())
}

pub(crate) fn run(command: &[String], cnf: &CnfFormula, budget: Duration) -> Result<SolveResult, SolverError> {
    let (program, args) = command
        .split_first()
        .ok_or_else(|| failure("empty solver command"))?;
    let mut file = tempfile::Builder::new()
        .suffix(".cnf")
        .tempfile()
        .map_err(|e| failure(e.to_string()))?;
    cnf.write_dimacs(&mut file).map_err(|e| failure(e.to_string()))?;
    let start = Instant::now();
    let mut child = Command::new(program)
        .args(args)
        .arg(file.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| failure(format!("cannot start {program}: {e}")))?;
    let mut stdout = child.stdout.take().unwrap();
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let deadline = start + budget;
    loop {
        match child.try_wait().map_err(|e| failure(e.to_string()))? {
            Some(_) => break,
            None if Instant::now() >= deadline => {
                let _ = child.kill();
                let _ = child.wait();
                let _ = reader.join();
                return Ok(SolveResult {
                    status: SolveStatus::Timeout,
                    model: None,
                    elapsed: start.elapsed(),
                    effort: Effort::default(),
                });
            }
            None => std::thread::sleep(Duration::from_millis(5)),
        }
    }
    let out = reader.join().map_err(|_| failure("output reader panicked"))?;
    parse_output(&out, cnf.num_atoms(), start.elapsed())
}

pub(crate) fn parse_output(out: &str, num_atoms: u32, elapsed: Duration) -> Result<SolveResult, SolverError> {
    let mut status = None;
    let mut model = vec![false; num_atoms as usize + 1];
    for line in out.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => SolveStatus::Sat,
                "UNSATISFIABLE" => SolveStatus::Unsat,
                "UNKNOWN" => SolveStatus::Timeout,
                other => return Err(failure(format!("unrecognized status line {other:?}"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let l: i64 = tok
                    .parse()
                    .map_err(|_| failure(format!("bad model literal {tok:?}")))?;
                if l > 0 && l as u64 <= num_atoms as u64 {
                    model[l as usize] = true;
                }
            }
        }
    }
    let status = status.ok_or_else(|| failure("solver printed no status line"))?;
    Ok(SolveResult {
        status,
        model: (status == SolveStatus::Sat).then_some(model),
        elapsed,
        effort: Effort::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_competition_output() {
        let r = parse_output("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3, Duration::ZERO).unwrap();
        assert_eq!(r.status, SolveStatus::Sat);
        assert_eq!(r.model.unwrap(), vec![false, true, false, true]);
        let r = parse_output("s UNSATISFIABLE\n", 3, Duration::ZERO).unwrap();
        assert!(r.model.is_none());
        assert!(parse_output("garbage", 3, Duration::ZERO).is_err());
        assert!(parse_output("s MAYBE", 3, Duration::ZERO).is_err());
    }
}
