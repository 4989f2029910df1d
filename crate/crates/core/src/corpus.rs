//! Named example groups with their known verdicts.

use crate::dsl::{parse, Input};
use crate::error::{Error, Result};
use crate::fbc::amalgamate;
use crate::linalg::IntVec2;
use crate::presentation::{GpqParams, TubularPresentation, VertexId};
use crate::report::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub input: Input,
    /// `(property, verdict)` pairs, using the property names of `analyze`.
    pub expected: Vec<(&'static str, Verdict)>,
}

const GERSTEN_TUBULAR: &str = "group gersten-tubular {
  vertex V;
  edge b : V(0,1) -> V(1,1);
  edge c : V(0,1) -> V(2,1);
}";

pub fn lyman_psi(m: i64, n: i64) -> GpqParams {
    GpqParams { p: vec![m, n], q: vec![m, n] }
}

type Pair = ((i64, i64), (i64, i64));

fn single(name: &str, edges: &[Pair]) -> TubularPresentation {
    let edges: Vec<(IntVec2, IntVec2)> = edges.iter().map(|&(v, w)| (v.into(), w.into())).collect();
    TubularPresentation::single_vertex(name, &edges).expect("valid corpus entry")
}

pub fn gersten_tubular() -> TubularPresentation {
    match parse(GERSTEN_TUBULAR).expect("valid corpus entry") {
        Input::Tubular(g) => g,
        Input::Gpq(_) => unreachable!(),
    }
}

pub fn lyman_phi() -> TubularPresentation {
    single("lyman-phi", &[((0, 1), (0, 1)), ((1, 1), (1, 1))])
}

/// `⟨a, b, s | ab = ba, s a s⁻¹ = b⟩`.
pub fn eg2_g1() -> TubularPresentation {
    single("eg2-g1", &[((1, 0), (0, 1))])
}

/// Two copies of [`eg2_g1`] amalgamated over `ab⁻¹ = a`.
pub fn eg2_double() -> TubularPresentation {
    let g = eg2_g1();
    let mut d = amalgamate(&g, (VertexId(0), &(1, -1).into()), &g, (VertexId(0), &(1, 0).into()))
        .expect("valid corpus entry");
    d.name = "eg2-double".into();
    d
}

pub fn bare_z2() -> TubularPresentation {
    let mut g = TubularPresentation::new("Z2");
    g.add_vertex("W").expect("fresh vertex");
    g
}

/// Gersten's group amalgamated with `Z² = ⟨x, y⟩` over `a = x`.
pub fn corlast() -> TubularPresentation {
    let mut g = amalgamate(&gersten_tubular(), (VertexId(0), &(1, 0).into()), &bare_z2(), (VertexId(0), &(1, 0).into()))
        .expect("valid corpus entry");
    g.name = "corlast".into();
    g
}

pub fn bs12() -> TubularPresentation {
    single("bs12", &[((1, 0), (2, 0))])
}

pub fn corpus() -> Vec<CorpusEntry> {
    use Verdict::{No, Unknown, Yes};
    let gpq = |p: Vec<i64>, q: Vec<i64>| Input::Gpq(GpqParams { p, q });
    let psi = |m: i64, n: i64, compact: Verdict| CorpusEntry {
        name: format!("lyman-psi({m},{n})"),
        input: Input::Gpq(lyman_psi(m, n)),
        expected: vec![
            ("cat0", Yes),
            ("vspecial", Yes),
            ("compact_special", compact),
            ("cocompact_cubulation", compact),
        ],
    };
    vec![
        CorpusEntry {
            name: "gersten".into(),
            input: gpq(vec![0, 0], vec![1, 2]),
            expected: vec![
                ("fbc", Yes),
                ("cat0", No),
                ("vspecial", No),
                ("cocompact_cubulation", No),
                ("compact_special", No),
                ("walls_non_dilated", No),
                ("vrc", No),
                ("virtually_fbc", No),
            ],
        },
        CorpusEntry {
            name: "gersten-tubular".into(),
            input: Input::Tubular(gersten_tubular()),
            expected: vec![("fbc", Yes), ("cat0", No), ("vspecial", No), ("cocompact_cubulation", No)],
        },
        psi(1, 1, Yes),
        psi(1, 2, No),
        psi(2, 2, Yes),
        psi(2, -2, Yes),
        psi(1, 3, No),
        CorpusEntry {
            name: "lyman-phi".into(),
            input: Input::Tubular(lyman_phi()),
            expected: vec![("cat0", Yes), ("fbc", Yes), ("parallelism_classes", Yes), ("vspecial", Yes)],
        },
        CorpusEntry {
            name: "eg2-g1".into(),
            input: Input::Tubular(eg2_g1()),
            expected: vec![("fbc", Yes), ("cat0", Yes), ("vspecial", Yes)],
        },
        CorpusEntry { name: "eg2-double".into(), input: Input::Tubular(eg2_double()), expected: vec![("fbc", No)] },
        CorpusEntry {
            name: "corlast".into(),
            input: Input::Tubular(corlast()),
            expected: vec![("fbc", No), ("cat0", No)],
        },
        CorpusEntry {
            name: "f2xz".into(),
            input: gpq(vec![0], vec![0]),
            expected: vec![("fbc", Yes), ("cat0", Yes), ("vspecial", Yes), ("compact_special", Yes)],
        },
        CorpusEntry {
            name: "bs12".into(),
            input: Input::Tubular(bs12()),
            expected: vec![
                ("fbc", No),
                ("cat0", No),
                ("equitable_set", No),
                ("cocompact_cubulation", Unknown),
            ],
        },
    ]
}

/// Looks up a corpus entry by name; `lyman-psi(M,N)` works for any integers.
pub fn builtin(name: &str) -> Result<Input> {
    if let Some(args) = name.strip_prefix("lyman-psi(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if let [m, n] = parts[..] {
            if let (Ok(m), Ok(n)) = (m.parse(), n.parse()) {
                return Ok(Input::Gpq(lyman_psi(m, n)));
            }
        }
        return Err(Error::UnknownBuiltin(name.into()));
    }
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.input)
        .ok_or_else(|| Error::UnknownBuiltin(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn required_entries_present() {
        let names: Vec<String> = corpus().into_iter().map(|e| e.name).collect();
        for n in ["gersten", "lyman-psi(1,1)", "lyman-phi", "eg2-g1", "eg2-double", "corlast", "f2xz", "bs12"] {
            assert!(names.iter().any(|m| m == n), "{n}");
        }
    }

    #[test]
    fn expected_spot_checks() {
        let c = corpus();
        let get = |n: &str| c.iter().find(|e| e.name == n).unwrap().expected.clone();
        assert!(get("gersten").contains(&("cat0", Verdict::No)));
        assert!(get("corlast").contains(&("fbc", Verdict::No)));
        assert!(get("lyman-psi(1,1)").contains(&("compact_special", Verdict::Yes)));
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("lyman-psi(3,-4)").unwrap(), Input::Gpq(lyman_psi(3, -4)));
        assert!(builtin("lyman-psi(3)").is_err());
        assert!(builtin("nope").is_err());
        assert_eq!(corlast().edges.len(), 3);
        assert_eq!(eg2_double().vertices.len(), 2);
    }
}
