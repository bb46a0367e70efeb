//! Named systems with their published diagrams, solutions and claims.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Diagram, Validation};
use crate::solver::normalize_ray;
use crate::text::{parse_auto, serialize_numeric, ParseError};

/// A machine-checkable statement about a catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Claim {
    No01State,
    Has01State,
    /// A solution exists with every component drawn from the set.
    DiscreteSolvable(Vec<i64>),
    /// No solution has all components in the set.
    NotDiscrete(Vec<i64>),
    /// The interval solver proves there is no real solution.
    Infeasible,
    /// The interval solver finds a feasible candidate.
    Feasible,
    /// The stored solution passes exact verification.
    Solution,
    /// The named entry embeds as a subdiagram.
    Contains(String),
    /// The named entry does not embed.
    Excludes(String),
}

fn format_set(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn parse_set(text: &str) -> Option<Vec<i64>> {
    let inner = text.trim().strip_prefix('{')?.strip_suffix('}')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::No01State => f.write_str("no_01_state"),
            Claim::Has01State => f.write_str("has_01_state"),
            Claim::DiscreteSolvable(v) => write!(f, "discrete_solvable:{}", format_set(v)),
            Claim::NotDiscrete(v) => write!(f, "not_discrete:{}", format_set(v)),
            Claim::Infeasible => f.write_str("infeasible"),
            Claim::Feasible => f.write_str("feasible"),
            Claim::Solution => f.write_str("solution"),
            Claim::Contains(name) => write!(f, "contains:{name}"),
            Claim::Excludes(name) => write!(f, "excludes:{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown claim tag {0:?}")]
pub struct ClaimParseError(pub String);

impl FromStr for Claim {
    type Err = ClaimParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ClaimParseError(s.to_string());
        let (tag, arg) = s.split_once(':').map_or((s, None), |(t, a)| (t, Some(a)));
        match (tag, arg) {
            ("no_01_state", None) => Ok(Claim::No01State),
            ("has_01_state", None) => Ok(Claim::Has01State),
            ("infeasible", None) => Ok(Claim::Infeasible),
            ("feasible", None) => Ok(Claim::Feasible),
            ("solution", None) => Ok(Claim::Solution),
            ("discrete_solvable", Some(a)) => parse_set(a).map(Claim::DiscreteSolvable).ok_or_else(err),
            ("not_discrete", Some(a)) => parse_set(a).map(Claim::NotDiscrete).ok_or_else(err),
            ("contains", Some(a)) if !a.is_empty() => Ok(Claim::Contains(a.to_string())),
            ("excludes", Some(a)) if !a.is_empty() => Ok(Claim::Excludes(a.to_string())),
            _ => Err(err()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Diagram text, native format unless it needs more than 61 labels.
    pub mmp: String,
    pub n: usize,
    /// `Relaxed` for reduced systems with shorter edges.
    pub validation: Validation,
    /// Brace vectors in label order.
    pub known_solution: Option<String>,
    pub claims: Vec<Claim>,
    /// Assembled from a partial description; only its counts are checked.
    pub reconstructed: bool,
}

impl CatalogEntry {
    pub fn diagram(&self) -> Result<Diagram, ParseError> {
        parse_auto(&self.mmp, self.validation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no catalog entry named {0:?}")]
pub struct UnknownEntry(pub String);

const M101: &[i64] = &[-1, 0, 1];

fn entry(name: &'static str, description: &'static str, mmp: &str, n: usize, claims: &[Claim]) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        mmp: mmp.to_string(),
        n,
        validation: Validation::Strict,
        known_solution: None,
        claims: claims.to_vec(),
        reconstructed: false,
    }
}

impl CatalogEntry {
    fn solution(mut self, text: &str) -> Self {
        self.known_solution = Some(text.to_string());
        self.claims.push(Claim::Solution);
        self
    }

    fn relaxed(mut self) -> Self {
        self.validation = Validation::Relaxed;
        self
    }
}

fn contains(names: &[&str]) -> Vec<Claim> {
    names.iter().map(|s| Claim::Contains(s.to_string())).collect()
}

fn excludes(names: &[&str]) -> Vec<Claim> {
    names.iter().map(|s| Claim::Excludes(s.to_string())).collect()
}

fn with(mut claims: Vec<Claim>, more: Vec<Claim>) -> Vec<Claim> {
    claims.extend(more);
    claims
}

/// Every entry, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    use Claim::*;
    let d = || DiscreteSolvable(M101.to_vec());
    let mut out = vec![
        // smallest diagrams without 0-1 states
        entry("smallest-7-5", "smallest 3-dim, loop of size 3", "123,345,561,275,476", 3, &[No01State, Infeasible]),
        entry(
            "smallest-15-11-hexagon",
            "smallest 3-dim with loops of size 4, hexagon form",
            "123,345,567,789,9AB,BC1,CD6,2DA,2E8,4FA,CEF",
            3,
            &[No01State, Infeasible],
        ),
        entry(
            "smallest-15-11-heptagon",
            "smallest 3-dim with loops of size 4, heptagon form",
            "123,345,567,789,9AB,BCD,DE1,4AE,28C,2FA,6FD",
            3,
            &[No01State, Infeasible],
        ),
        entry(
            "smallest-19-13-octagon",
            "smallest 3-dim with loops of size 5, octagon form",
            "123,345,567,789,9AB,BCD,DEF,FG1,2IA,6IE,4HC,8JG,HIJ",
            3,
            &[No01State, Infeasible],
        ),
        entry(
            "smallest-19-13-heptagon",
            "smallest 3-dim with loops of size 5, heptagon form",
            "123,345,567,789,9AB,BCD,DE1,EI7,2F9,4GB,IJG,FJH,CH6",
            3,
            &[No01State, Infeasible],
        ),
        entry("smallest-6-3", "smallest 4-dim, loop of size 2", "1234,2356,1456", 4, &[No01State, Infeasible]),
        entry("smallest-10-5", "smallest 4-dim with loops of size 3", "1234,4567,7891,35A8,29A6", 4, &[No01State, Infeasible]),
        entry(
            "smallest-22-11-hexagon",
            "smallest 4-dim with loops of size 4, hexagon form",
            "1234,4567,789A,ABCD,DEFG,GHI1,FJK5,HJMC,3KL8,IBL6,29ME",
            4,
            &[No01State],
        ),
        entry(
            "smallest-22-11-pentagon",
            "smallest 4-dim with loops of size 4, pentagon form",
            "1234,4567,789A,ABCD,DEF1,FGH5,EMJ6,2GLC,3IJ8,HIKB,MLK9",
            4,
            &[No01State],
        ),
        entry(
            "smallest-38-19",
            "smallest 4-dim with loops of size 5",
            "1234,1567,289A,5BCD,8BEF,3GHI,6JKL,GJMN,CHOP,EMQR,OQST,RUVW,4UXY,9SZa,FIbc,KTXb,7VZc,ALPW,DNYa",
            4,
            &[No01State],
        ),
        // 4-dim systems with solutions
        entry("cabello-18-9", "Cabello's 18-9 system", "1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH", 4, &[No01State, d(), Feasible]),
        entry(
            "fig3b-24-13",
            "24-13 system without {-1,0,1} solutions",
            "1234,4567,789A,ABCD,DEFG,GHI1,FNM8,GOL7,HJK6,DNK4,AMJ1,35CE,B29I",
            4,
            &[No01State, NotDiscrete(M101.to_vec())],
        )
        .solution(
            "{1,0,1,1}{1,0,-2,1}{1,0,0,-1}{0,1,0,0}{0,0,1,0}{0,0,0,1}{1,0,0,0}{0,2,2,1}{0,2,-1,-2}{0,1,-2,2}{3,2,2,1}{1,-2,0,1}\
             {-1,0,1,1}{1,1,0,1}{1,-1,1,0}{0,1,1,-1}{1,1,-1,0}{1,-1,0,-1}{1,-2,-1,0}{1,0,1,0}{0,0,1,1}{3,2,-1,-2}{1,0,-1,2}{0,2,-1,1}",
        ),
        entry(
            "peres-19-10",
            "Peres' 19-10 system",
            "1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,678J",
            4,
            &with(vec![No01State, d()], contains(&["cabello-18-9"])),
        ),
        entry(
            "fig4a-20-11",
            "20-11 sibling of Kernaghan's system",
            "1234,4567,789A,ABCD,DEFG,GHI1,68FH,12JI,1J9B,345K,4KEC",
            4,
            &with(vec![No01State, d()], excludes(&["cabello-18-9"])),
        )
        .solution(
            "{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}{1,0,0,-1}{1,1,1,1}{1,-1,-1,1}{1,1,-1,-1}{1,0,1,0}{0,1,0,1}{1,0,-1,0}\
             {1,1,1,-1}{1,-1,1,1}{1,-1,-1,-1}{0,0,1,-1}{1,1,0,0}{1,-1,0,0}{0,0,1,0}{0,1,0,0}{1,0,0,1}",
        ),
        entry(
            "kernaghan-20-11",
            "Kernaghan's 20-11 system",
            "1234,4567,789A,ABCD,DEFG,GHI1,68FH,2IAK,345J,4JEC,9ABK",
            4,
            &with(vec![No01State, d()], excludes(&["cabello-18-9"])),
        ),
        entry(
            "fig4c-22-13",
            "22-13 system containing neither 18-9 nor the 20-11 pair",
            "1234,4567,789A,ABCD,DEFG,GHI1,2ILA,345J,4JEC,678K,7KMG,9ABL,FGHM",
            4,
            &with(vec![No01State, d()], excludes(&["cabello-18-9", "fig4a-20-11", "kernaghan-20-11"])),
        )
        .solution(
            "{1,1,0,0}{1,-1,0,0}{0,0,1,0}{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}{1,0,0,1}{1,-1,-1,-1}{1,1,1,-1}{1,-1,1,1}\
             {1,0,-1,0}{0,1,0,1}{1,0,1,0}{1,1,-1,-1}{1,-1,-1,1}{1,-1,1,-1}{0,0,1,1}{0,1,0,0}{1,0,0,-1}{1,1,-1,1}{1,1,1,1}",
        ),
        entry(
            "fig4d-22-13",
            "second 22-13 system containing neither 18-9 nor the 20-11 pair",
            "1234,4567,789A,ABCD,DEFG,GHI1,12IJ,345K,678L,GML7,1J9B,4KEC,FGHM",
            4,
            &with(vec![No01State, d()], excludes(&["cabello-18-9", "fig4a-20-11", "kernaghan-20-11"])),
        )
        .solution(
            "{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}{1,0,0,-1}{1,1,1,1}{1,-1,-1,1}{1,-1,1,-1}{1,1,0,0}{0,0,1,1}{1,-1,0,0}\
             {1,1,1,-1}{1,1,-1,1}{1,-1,-1,-1}{0,1,0,-1}{1,0,1,0}{1,0,-1,0}{0,1,0,0}{0,0,1,0}{1,0,0,1}{1,1,-1,-1}{0,1,0,1}",
        ),
    ];
    let (peres_mmp, peres_solution) = peres_24();
    let mut peres_claims = vec![No01State, d()];
    peres_claims.extend(contains(&["cabello-18-9", "peres-19-10", "fig4a-20-11", "kernaghan-20-11", "fig4c-22-13", "fig4d-22-13"]));
    out.push(entry("peres-24-24", "Peres' 24 rays with all 24 orthogonal tetrads", &peres_mmp, 4, &peres_claims).solution(&peres_solution));
    out.extend([
        // 3-dim systems
        entry(
            "ck-51-37",
            "Conway-Kochen system with every vector kept",
            "123,145,267,2AB,3CD,CEF,CGm,DIn,DKL,6EM,6KN,7IO,7GP,4GQ,4Ko,5Ep,5IS,ALW,AFX,BSY,BQZ,3cf,3de,cOh,dMT,cN9,dP8,\
             eSl,fQg,iR1,jk1,iFa,jLb,kOU,kMV,RPH,RNJ",
            3,
            &[No01State],
        )
        .solution(
            "{0,0,1}{1,0,0}{0,1,0}{1,-1,0}{1,1,0}{0,1,-1}{0,1,1}{2,5,1}{2,5,-1}{0,1,2}{0,2,-1}{1,0,1}{1,0,-1}{1,-1,-1}{1,2,-1}\
             {1,1,-1}{2,-1,-5}{1,-1,1}{2,-1,5}{1,1,1}{1,-2,1}{2,1,1}{2,-1,-1}{2,1,-1}{2,-1,1}{1,1,2}{1,2,0}{1,-1,-2}{2,-5,1}\
             {2,1,5}{2,1,-5}{5,2,-1}{5,-2,1}{5,1,2}{5,-1,-2}{1,2,5}{1,-2,-5}{1,0,2}{1,0,-2}{2,0,1}{2,0,-1}{1,-5,2}{2,-5,-1}\
             {2,-1,0}{2,1,0}{1,-2,0}{1,5,-2}{1,-2,-1}{1,2,1}{1,1,-2}{1,-1,2}",
        ),
        entry(
            "bub-49-36",
            "Bub's system with every vector kept",
            "123,345,167,AB6,AC4,DEG,DFH,F9O,E8V,5JI,7MN,GIa,HNh,7LT,5KR,DAe,UTS,PRS,1GP,3HU,3Vj,Pgh,Uba,1Oi,VZg,OYb,6Xk,\
             4Wn,Sde,dci,dfj,imn,jlk,akQ,hnQ,eQ2",
            3,
            &[No01State],
        ),
        entry(
            "peres-57-40",
            "Peres' 3-dim system with every vector kept",
            "123,39R,89A,47D,56E,DRE,EFG,CBD,NML,LKE,DJQ,QST,PJI,HKO,RVX,RUW,14Y,1Z5,4aA,5b8,8gB,AhF,7cH,6dI,CiO,GjP,7eM,\
             6fS,ClN,GkT,NqX,PsV,OrU,MmU,SnV,HoX,IpW,TtW,2uB,2vF",
            3,
            &[No01State],
        ),
        entry(
            "ks-27",
            "Kochen-Specker 27-point graph with every vector kept",
            "123,345,567,789,9AB,BC1,4DA,EFG,GHI,IJK,KLM,MNO,OPE,HQN,1RK,7RE",
            3,
            &[Has01State],
        )
        .solution(
            "{0,1,-2}{5,2,1}{1,-2,-1}{1,0,1}{1,1,-1}{2,-1,1}{0,1,1}{2,1,-1}{1,-1,1}{1,0,-1}{1,2,1}{5,-2,-1}{0,1,0}{0,1,-1}\
             {2,1,1}{1,-1,-1}{1,1,0}{1,-1,2}{5,1,-2}{0,2,1}{5,-1,2}{1,1,-2}{1,-1,0}{1,1,1}{2,-1,-1}{0,0,1}{1,0,0}",
        ),
        entry(
            "tkadlec-dual-peres",
            "diagram drawn as dual to Peres' 3-dim system",
            "123,345,567,869,9AH,8C2,7DG,HG1,4BA,CBD,6gE,BhE,3IJ,2RO,1VU,VPN,UML,JKN,OKL,IQM,RQP,jSK,jiQ,UWX,Veb,Gfa,HCZ,\
             ZYb,XYa,WdC,edf,TFd,TcY,1kE,1lj,1mT",
            3,
            &[Has01State],
        ),
        entry(
            "tkadlec-dual-ck",
            "diagram drawn as dual to the Conway-Kochen system",
            "123,145,16C,768,7HK,4FB,GEC,89A,5IJ,HGI,EF9,KBD,JAD,CDV,KLM,BON,DgS,VUT,SP2,QRS,MQU,NPT,c6R,GPd,VWX,X3Y,3Ze,\
             EZQ,abJ,YfA,cde,ehD,acW",
            3,
            &[No01State, Infeasible],
        ),
        // dropping vectors that lie on one edge
        entry("fig5a-hexagon", "hexagon building block", "123,345,567,789,9AB,BC1,2D8", 3, &[Has01State, Feasible]),
        entry("fig5a-reduced", "hexagon without its single-edge vectors", "123,35,57,789,9B,B1,28", 3, &[No01State]).relaxed(),
        entry("fig5a-reduced-4", "reduced hexagon with vector 4 restored", "123,345,567,789,9B,B1,28", 3, &[Has01State]).relaxed(),
        entry("fig5a-reduced-d", "reduced hexagon with vector D restored", "123,35,567,789,9B,B1,2D8", 3, &[Has01State]).relaxed(),
        entry(
            "fig5b-20-10",
            "18-9 with a tetrad through 1 and 4 added",
            "1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,14JK",
            4,
            &[No01State, Infeasible],
        ),
        entry(
            "fig5b-minus-k",
            "fig5b-20-10 with vector K dropped",
            "1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH,14J",
            4,
            &[No01State],
        )
        .relaxed()
        .solution(
            "{0,0,0,1}{1,0,0,0}{0,1,1,0}{0,1,-1,0}{1,0,0,-1}{1,-1,-1,1}{1,1,1,1}{1,-1,1,-1}{0,1,0,-1}{1,0,-1,0}{0,1,0,1}\
             {1,-1,1,1}{1,1,1,-1}{1,1,-1,1}{0,0,1,1}{1,-1,0,0}{1,1,0,0}{0,0,1,0}{1,-1,-1,0}",
        ),
    ]);
    out.push(CatalogEntry {
        reconstructed: true,
        ..entry("ks-192-118", "Kochen-Specker 192-vector system, reassembled from 15 hexagons", &ks_192(), 3, &[])
    });
    out
}

/// Looks an entry up by name.
pub fn catalog_get(name: &str) -> Result<CatalogEntry, UnknownEntry> {
    catalog().into_iter().find(|e| e.name == name).ok_or_else(|| UnknownEntry(name.to_string()))
}

/// Peres' 24 rays in 4 dimensions and the diagram of all their orthogonal
/// tetrads: diagram text and brace solution.
fn peres_24() -> (String, String) {
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for e in -1..=1 {
                    let v = vec![a, b, c, e];
                    let zeros = v.iter().filter(|&&x| x == 0).count();
                    if matches!(zeros, 0 | 2 | 3) {
                        if let Some(r) = normalize_ray(&v) {
                            rays.push(r);
                        }
                    }
                }
            }
        }
    }
    rays.sort_by(|x, y| y.cmp(x));
    rays.dedup();
    let dot = |i: usize, j: usize| -> i64 { rays[i].iter().zip(&rays[j]).map(|(a, b)| a * b).sum() };
    let m = rays.len();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for e in c + 1..m {
                    let q = [a, b, c, e];
                    if q.iter().enumerate().all(|(i, &x)| q[i + 1..].iter().all(|&y| dot(x, y) == 0)) {
                        edges.push(q.to_vec());
                    }
                }
            }
        }
    }
    let d = Diagram::new(m, edges).expect("orthogonal tetrads of distinct rays form a diagram");
    // default labels already follow the brace order
    let braces: String = rays
        .iter()
        .map(|r| format!("{{{}}}", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    (crate::text::serialize(&d).expect("24 labels fit"), braces)
}

/// Fifteen hexagons in three groups of five; the first two hexagons of each
/// group share their start vertex, and 13 triangles tie the groups together
/// through vertices lying on two hexagon edges.
fn ks_192() -> String {
    const HEXAGON: [[usize; 3]; 7] = [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 8], [8, 9, 10], [10, 11, 0], [1, 12, 7]];
    let mut base = Vec::new();
    let mut next = 0;
    // vertex id of hexagon-local vertex `k` in hexagon `i` of group `g`
    let mut ids = vec![[[0usize; 13]; 5]; 3];
    for group in ids.iter_mut() {
        for (i, hex) in group.iter_mut().enumerate() {
            for (k, id) in hex.iter_mut().enumerate() {
                if i == 1 && k == 0 {
                    continue;
                }
                *id = next;
                next += 1;
            }
        }
        group[1][0] = group[0][0];
    }
    for group in &ids {
        for hex in group {
            for e in HEXAGON {
                base.push(e.iter().map(|&k| hex[k]).collect::<Vec<usize>>());
            }
        }
    }
    let across = |k: usize, i: usize| -> Vec<usize> { (0..3).map(|g| ids[g][i][k]).collect() };
    // start vertices, vertex 5 and vertex 9 of each hexagon
    base.push(across(0, 0));
    for i in 2..5 {
        base.push(across(0, i));
    }
    for i in 0..5 {
        base.push(across(4, i));
    }
    for i in 0..4 {
        base.push(across(8, i));
    }
    let d = Diagram::new(next, base).expect("hexagon assembly is a diagram");
    serialize_numeric(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::stats;
    use crate::text::serialize;

    #[test]
    fn cabello_text() {
        assert_eq!(catalog_get("cabello-18-9").unwrap().mmp, "1234,4567,789A,ABCD,DEFG,GHI1,35CE,29BI,68FH");
        assert!(catalog_get("ck-51-37").unwrap().claims.contains(&Claim::No01State));
        assert!(catalog_get("ks-27").unwrap().claims.contains(&Claim::Has01State));
        assert_eq!(catalog_get("nope"), Err(UnknownEntry("nope".into())));
    }

    #[test]
    fn names_are_unique_and_texts_round_trip() {
        let all = catalog();
        let mut names: Vec<&str> = all.iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), all.len());
        for e in &all {
            let d = e.diagram().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            let text = if e.reconstructed { serialize_numeric(&d) } else { serialize(&d).unwrap() };
            assert_eq!(text, e.mmp, "{}", e.name);
            for c in &e.claims {
                if let Claim::Contains(other) | Claim::Excludes(other) = c {
                    assert!(catalog_get(other).is_ok(), "{}: {other}", e.name);
                }
            }
        }
    }

    #[test]
    fn claim_tags_round_trip() {
        for e in catalog() {
            for c in &e.claims {
                assert_eq!(c.to_string().parse::<Claim>().unwrap(), *c);
            }
        }
        assert_eq!("discrete_solvable:{-1,0,1}".parse(), Ok(Claim::DiscreteSolvable(vec![-1, 0, 1])));
        assert!("contains:".parse::<Claim>().is_err());
        assert!("weird".parse::<Claim>().is_err());
    }

    #[test]
    fn peres_24_counts() {
        let d = catalog_get("peres-24-24").unwrap().diagram().unwrap();
        assert_eq!((d.n_vertices(), d.n_edges()), (24, 24));
    }

    #[test]
    fn ks_192_counts() {
        let e = catalog_get("ks-192-118").unwrap();
        assert!(e.reconstructed);
        let s = stats(&e.diagram().unwrap());
        assert_eq!((s.a, s.b, s.a_star), (192, 118, 117));
        assert!(s.excess() < 0);
    }
}
