//! `vars:`, `coeffs:`, an optional `bind:` line and one `eq:` line per
//! equation.
//!
//! ```text
//! vars: x y z
//! coeffs: g1 g2
//! bind: s3.grp g1=(1,2) g2=(1,2,3)
//! eq: [x,y] x^2 g1 y^-3
//! ```
//!
//! The group path on the `bind:` line is optional (a group may be supplied
//! separately) and is relative to the system file.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use groupeq_core::equations::EquationSystem;
use groupeq_core::FiniteGroup;

use super::{content_lines, err, FormatError};

/// A parsed system file; the binding is applied by [`SystemFile::bind`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: EquationSystem,
    pub group_path: Option<PathBuf>,
    pub assignments: Vec<(String, String)>,
}

pub fn parse_system(text: &str) -> Result<SystemFile, FormatError> {
    let mut vars: Option<Vec<String>> = None;
    let mut coeffs: Option<Vec<String>> = None;
    let mut group_path = None;
    let mut assignments = Vec::new();
    let mut system: Option<EquationSystem> = None;
    for (ln, line) in content_lines(text) {
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err(ln, "expected `vars:`, `coeffs:`, `bind:` or `eq:`"))?;
        let rest = rest.trim();
        match key.trim() {
            "vars" if system.is_none() && vars.is_none() => {
                vars = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "coeffs" if system.is_none() && coeffs.is_none() => {
                coeffs = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "bind" if group_path.is_none() && assignments.is_empty() => {
                for tok in rest.split_whitespace() {
                    match tok.split_once('=') {
                        Some((sym, el)) => assignments.push((sym.to_string(), el.to_string())),
                        None if group_path.is_none() && assignments.is_empty() => {
                            group_path = Some(PathBuf::from(tok));
                        }
                        None => return Err(err(ln, format!("expected `symbol=element`, found `{tok}`"))),
                    }
                }
            }
            "eq" => {
                if system.is_none() {
                    let s = EquationSystem::new(vars.clone().unwrap_or_default(), coeffs.clone().unwrap_or_default())
                        .map_err(|e| err(ln, e.to_string()))?;
                    system = Some(s);
                }
                let s = system.as_mut().expect("just created");
                s.push_equation(rest, ln).map_err(|e| match e {
                    groupeq_core::Error::Parse { column, message, .. } => {
                        err(ln, format!("column {column}: {message}"))
                    }
                    other => err(ln, other.to_string()),
                })?;
            }
            other => return Err(err(ln, format!("unexpected or repeated `{other}:`"))),
        }
    }
    let system = match system {
        Some(s) => s,
        None => EquationSystem::new(vars.unwrap_or_default(), coeffs.unwrap_or_default())
            .map_err(|e| err(0, e.to_string()))?,
    };
    Ok(SystemFile {
        system,
        group_path,
        assignments,
    })
}

impl SystemFile {
    pub fn load(path: &Path) -> anyhow::Result<SystemFile> {
        let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        let mut f = parse_system(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        if let Some(p) = &f.group_path {
            if p.is_relative() {
                f.group_path = Some(path.parent().unwrap_or(Path::new(".")).join(p));
            }
        }
        Ok(f)
    }

    /// Binds the coefficients to named elements of `group`.
    pub fn bind(&mut self, group: Arc<FiniteGroup>) -> anyhow::Result<()> {
        self.system.bind_by_name(group, &self.assignments)?;
        Ok(())
    }
}

/// Renders a system; `bind` gives the optional group path and element names.
pub fn write_system(system: &EquationSystem, group_path: Option<&str>) -> String {
    let mut out = format!(
        "vars: {}\ncoeffs: {}\n",
        system.variables().join(" "),
        system.coefficients().join(" ")
    );
    if let Some(b) = system.binding() {
        let mut parts: Vec<String> = group_path.map(str::to_string).into_iter().collect();
        for (sym, &v) in system.coefficients().iter().zip(&b.values) {
            parts.push(format!("{sym}={}", b.group.element_name(v)));
        }
        out.push_str(&format!("bind: {}\n", parts.join(" ")));
    }
    for j in 0..system.num_equations() {
        out.push_str(&format!("eq: {}\n", system.render_equation(j)));
    }
    out
}
