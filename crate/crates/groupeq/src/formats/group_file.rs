//! `group <name> order <n>` followed by `table:` rows or `generators:`
//! permutations in cycle notation. A table may be preceded by a `names:` line.

use groupeq_core::group::{from_generators, FiniteGroup};
use groupeq_core::perm::Perm;
use groupeq_core::subgroup::{generators, Subgroup};
use groupeq_core::Caps;

use super::{content_lines, err, FormatError};

pub fn parse_group(text: &str, caps: &Caps) -> Result<FiniteGroup, FormatError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| err(0, "empty group file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (name, order) = match words.as_slice() {
        ["group", name, "order", n] => (
            name.to_string(),
            n.parse::<usize>().map_err(|_| err(ln, format!("bad order `{n}`")))?,
        ),
        _ => return Err(err(ln, "expected `group <name> order <n>`")),
    };
    if order == 0 {
        return Err(err(ln, "order must be positive"));
    }
    let mut names: Option<Vec<String>> = None;
    let (ln, mode) = loop {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(0, "missing `table:` or `generators:`"))?;
        if let Some(rest) = l.strip_prefix("names:") {
            names = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        break (ln, l);
    };
    let group = match mode {
        "table:" => {
            let mut rows = Vec::with_capacity(order);
            for (ln, l) in lines {
                let row = l
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| err(ln, format!("bad entry `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
            }
            if rows.len() != order {
                return Err(err(0, format!("expected {order} table rows, found {}", rows.len())));
            }
            FiniteGroup::from_table(name, &rows, names).map_err(|e| err(0, e.to_string()))?
        }
        "generators:" => {
            if names.is_some() {
                return Err(err(ln, "`names:` applies to tables only"));
            }
            let perms = lines
                .map(|(ln, l)| Perm::parse_cycles(l).map_err(|e| err(ln, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            from_generators(&name, &perms, caps).map_err(|e| err(0, e.to_string()))?
        }
        other => return Err(err(ln, format!("expected `table:` or `generators:`, found `{other}`"))),
    };
    if group.order() != order {
        return Err(err(
            0,
            format!("header says order {order}, the group has order {}", group.order()),
        ));
    }
    Ok(group)
}

pub fn load_group(path: &std::path::Path, caps: &Caps) -> anyhow::Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    parse_group(&text, caps).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Table form, with element names.
pub fn write_table(g: &FiniteGroup) -> String {
    let mut out = format!("group {} order {}\n", g.name(), g.order());
    out.push_str("names: ");
    out.push_str(&g.names().join(" "));
    out.push_str("\ntable:\n");
    for x in g.elements() {
        let row: Vec<String> = g.row(x).map(|y| y.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Generator form: a small generating set acting by right multiplication on
/// the points `1..=|G|`.
pub fn write_generators(g: &FiniteGroup) -> String {
    let gens = generators(g, &Subgroup::whole(g));
    let mut out = format!("group {} order {}\ngenerators:\n", g.name(), g.order());
    if gens.is_empty() {
        out.push_str("()\n");
    }
    for s in gens {
        let images = g.elements().map(|x| g.mul(x, s) as u32).collect();
        let p = Perm::from_images(images).expect("right multiplication is a bijection");
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use groupeq_core::group::cyclic;
    use groupeq_core::iso::isomorphism;

    #[test]
    fn trivial_and_s3() {
        let g = parse_group("group T order 1\ntable:\n0\n", &Caps::default()).unwrap();
        assert_eq!(g.order(), 1);
        let s3 = parse_group(
            "# symmetric group\ngroup S3 order 6\ngenerators:\n(1 2)\n(1 2 3)\n",
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn non_associative_table_rejected() {
        // a Latin square with identity 0 that is not associative
        let text = "group L order 5\ntable:\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        let e = parse_group(text, &Caps::default()).unwrap_err();
        assert!(e.message.contains("associativ"), "{e}");
        let six =
            "group L order 6\ntable:\n0 1 2 3 4 5\n1 0 5 2 3 4\n2 4 3 5 0 1\n3 5 1 4 2 0\n4 2 0 1 5 3\n5 3 4 0 1 2\n";
        let e = parse_group(six, &Caps::default()).unwrap_err();
        assert!(e.message.contains("associativ"), "{e}");
    }

    #[test]
    fn bad_headers() {
        assert!(parse_group("", &Caps::default()).is_err());
        assert!(parse_group("group X order 3\ntable:\n0 1\n1 0\n", &Caps::default()).is_err());
        assert!(parse_group("group X order 3\ngenerators:\n(1 2)\n", &Caps::default()).is_err());
        assert!(parse_group("grp X\n", &Caps::default()).is_err());
    }

    #[test]
    fn round_trips() {
        let g = cyclic(6).unwrap();
        let t = parse_group(&write_table(&g), &Caps::default()).unwrap();
        assert_eq!(t, g);
        let p = parse_group(&write_generators(&g), &Caps::default()).unwrap();
        assert!(isomorphism(&p, &g, &Caps::default()).unwrap().is_some());
        let one = parse_group(&write_generators(&cyclic(1).unwrap()), &Caps::default()).unwrap();
        assert_eq!(one.order(), 1);
    }
}
