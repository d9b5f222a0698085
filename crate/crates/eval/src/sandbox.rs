//! Isolated execution of agent-written Python.
//!
//! Each call runs in a fresh interpreter process inside its own process group
//! and scratch directory, with a cleared environment and resource limits. A
//! prelude installs an audit hook that refuses sockets, child processes and
//! imports of the benchmark's own packages before the script runs.

use std::io::Read;
use std::os::unix::process::CommandExt;
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

const PRELUDE: &str = include_str!("../resources/sandbox_prelude.py");
const MARKER: &str = "__SANDBOX_DENIED__ ";

/// Environment variable overriding the interpreter command line.
pub const INTERPRETER_ENV: &str = "CBENCH_PYTHON";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandboxPolicy {
    pub interpreter: Vec<String>,
    pub default_timeout: Duration,
    pub hard_cap: Duration,
    /// Per-stream byte limit on captured output.
    pub max_output: usize,
    pub denied_modules: Vec<String>,
    /// Address-space limit for the child, when set.
    pub memory_limit: Option<u64>,
}

impl Default for SandboxPolicy {
    fn default() -> Self {
        let interpreter = match std::env::var(INTERPRETER_ENV) {
            Ok(cmd) if !cmd.trim().is_empty() => cmd.split_whitespace().map(String::from).collect(),
            _ => vec!["python3".to_string(), "-I".to_string()],
        };
        SandboxPolicy {
            interpreter,
            default_timeout: Duration::from_secs(15),
            hard_cap: Duration::from_secs(60),
            max_output: 32 * 1024,
            denied_modules: ["math_constraint", "pycsp3", "pysms", "cbench", "cbench_core", "cbench_eval"]
                .into_iter()
                .map(String::from)
                .collect(),
            memory_limit: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SandboxError {
    #[error("timeout {requested:?} exceeds the hard cap {cap:?}")]
    AboveCap { requested: Duration, cap: Duration },
    #[error("cannot start the interpreter: {0}")]
    Spawn(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExecResult {
    pub ok: bool,
    pub stdout: String,
    pub stderr: String,
    pub elapsed: Duration,
    pub timed_out: bool,
    pub truncated: bool,
    pub exit_code: Option<i32>,
    /// First policy denial reported by the child.
    pub violation: Option<String>,
}

fn drain<R: Read + Send + 'static>(mut r: R, cap: usize) -> thread::JoinHandle<(Vec<u8>, bool)> {
    thread::spawn(move || {
        let mut kept = Vec::new();
        let mut truncated = false;
        let mut buf = [0u8; 8192];
        loop {
            match r.read(&mut buf) {
                Ok(0) | Err(_) => break,
                Ok(n) => {
                    let room = cap.saturating_sub(kept.len());
                    if n > room {
                        truncated = true;
                    }
                    kept.extend_from_slice(&buf[..n.min(room)]);
                }
            }
        }
        (kept, truncated)
    })
}

fn set_limit(resource: libc::__rlimit_resource_t, value: u64) {
    let lim = libc::rlimit {
        rlim_cur: value,
        rlim_max: value,
    };
    unsafe {
        libc::setrlimit(resource, &lim);
    }
}

/// Splits denial markers out of the child's stderr.
fn split_violations(stderr: &str) -> (String, Option<String>) {
    let mut first = None;
    let mut kept = Vec::new();
    for line in stderr.split_inclusive('\n') {
        match line.strip_prefix(MARKER) {
            Some(reason) => {
                if first.is_none() {
                    first = Some(reason.trim_end().to_string());
                }
            }
            None => kept.push(line),
        }
    }
    (kept.concat(), first)
}

/// Runs `source` under the policy with the given wall-time budget.
pub fn execute_script(policy: &SandboxPolicy, source: &str, timeout: Duration) -> Result<ExecResult, SandboxError> {
    if timeout > policy.hard_cap {
        return Err(SandboxError::AboveCap {
            requested: timeout,
            cap: policy.hard_cap,
        });
    }
    let (program, args) = policy
        .interpreter
        .split_first()
        .ok_or_else(|| SandboxError::Spawn("empty interpreter command".into()))?;
    let dir = tempfile::tempdir().map_err(|e| SandboxError::Spawn(e.to_string()))?;
    let prelude = dir.path().join("_prelude.py");
    let script = dir.path().join("tool.py");
    std::fs::write(&prelude, PRELUDE).map_err(|e| SandboxError::Spawn(e.to_string()))?;
    std::fs::write(&script, source).map_err(|e| SandboxError::Spawn(e.to_string()))?;

    let cpu_secs = timeout.as_secs() + 2;
    let memory = policy.memory_limit;
    let mut cmd = Command::new(program);
    cmd.args(args)
        .arg(&prelude)
        .arg(&script)
        .arg(policy.denied_modules.join(","))
        .current_dir(dir.path())
        .env_clear()
        .env("PATH", "/usr/local/bin:/usr/bin:/bin")
        .env("HOME", dir.path())
        .env("LANG", "C.UTF-8")
        .env("PYTHONDONTWRITEBYTECODE", "1")
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    unsafe {
        cmd.pre_exec(move || {
            libc::setpgid(0, 0);
            // Drops every interface but loopback where namespaces are permitted.
            libc::unshare(libc::CLONE_NEWNET);
            set_limit(libc::RLIMIT_CPU, cpu_secs);
            set_limit(libc::RLIMIT_CORE, 0);
            set_limit(libc::RLIMIT_FSIZE, 64 << 20);
            if let Some(m) = memory {
                set_limit(libc::RLIMIT_AS, m);
            }
            Ok(())
        });
    }
    let start = Instant::now();
    let mut child = cmd.spawn().map_err(|e| SandboxError::Spawn(e.to_string()))?;
    let pgid = child.id() as libc::pid_t;
    let out = drain(child.stdout.take().expect("piped stdout"), policy.max_output);
    let err = drain(child.stderr.take().expect("piped stderr"), policy.max_output);
    let deadline = start + timeout;
    let mut timed_out = false;
    let status = loop {
        match child.try_wait() {
            Ok(Some(s)) => break Some(s),
            Ok(None) if Instant::now() >= deadline => {
                timed_out = true;
                unsafe {
                    libc::kill(-pgid, libc::SIGKILL);
                }
                break child.wait().ok();
            }
            Ok(None) => thread::sleep(Duration::from_millis(2)),
            Err(_) => break None,
        }
    };
    let elapsed = if timed_out { timeout } else { start.elapsed() };
    // Stray descendants would hold the pipes open.
    unsafe {
        libc::kill(-pgid, libc::SIGKILL);
    }
    let (stdout, t1) = out.join().unwrap_or_default();
    let (stderr, t2) = err.join().unwrap_or_default();
    let (stderr, violation) = split_violations(&String::from_utf8_lossy(&stderr));
    let exit_code = status.and_then(|s| s.code());
    Ok(ExecResult {
        ok: !timed_out && violation.is_none() && exit_code == Some(0),
        stdout: String::from_utf8_lossy(&stdout).into_owned(),
        stderr,
        elapsed,
        timed_out,
        truncated: t1 || t2,
        exit_code,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markers_are_stripped() {
        let (rest, v) = split_violations("a\n__SANDBOX_DENIED__ network access (socket.__new__)\nb\n");
        assert_eq!(rest, "a\nb\n");
        assert_eq!(v.as_deref(), Some("network access (socket.__new__)"));
        assert_eq!(split_violations("plain").1, None);
    }

    #[test]
    fn rejects_timeouts_above_cap() {
        let p = SandboxPolicy::default();
        assert!(matches!(
            execute_script(&p, "pass", Duration::from_secs(61)),
            Err(SandboxError::AboveCap { .. })
        ));
    }
}
