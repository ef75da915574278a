//! Grid search over generated families: evaluate, canonicalize, dedupe,
//! tag taxicab coincidences, and persist as JSON lines.

use std::collections::HashSet;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gcd_all, int, parse_integer, to_integer, Integer, Rational};
use crate::forms::{
    content_reduce, cube, evaluate_forms, fraction_ratio, is_cubic_solution, numeric_ratio,
    sandor_generate, CubicQuadruple, FormQuadruple,
};
use crate::identities::RelationMode;
use crate::json::{integers, parse_integers, parse_seed, RationalRepr};
use crate::poly::Polynomial;
use crate::powersum::faulhaber;

/// Upper bound on evaluated lattice points per run unless overridden.
pub const GRID_LIMIT: u128 = 10_000_000;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "POWERSUM_FORGE_THREADS";

/// How grid points feed the forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Forms evaluated at `(u, v)`.
    Cubic,
    /// Forms evaluated at `(S_k(u), S_m(v))` for Q, `(S_2(u), S_1(v)^k)` for F.
    /// The diagonal `u = v = n` gives the power-sum relation at `n`.
    PowerSums(RelationMode),
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Cubic => f.write_str("cubic"),
            SearchMode::PowerSums(m) => m.fmt(f),
        }
    }
}

impl FromStr for SearchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "cubic" => Ok(SearchMode::Cubic),
            other => Ok(SearchMode::PowerSums(other.parse()?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub u_range: (i64, i64),
    pub v_range: (i64, i64),
    pub seeds: Vec<CubicQuadruple>,
    pub modes: Vec<SearchMode>,
    pub dedupe: bool,
    pub output: Option<PathBuf>,
    pub allow_large: bool,
    /// Requested worker count; `None` uses every available core.
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(u_range: (i64, i64), v_range: (i64, i64), seeds: Vec<CubicQuadruple>) -> Self {
        Self {
            u_range,
            v_range,
            seeds,
            modes: vec![SearchMode::Cubic],
            dedupe: true,
            output: None,
            allow_large: false,
            threads: None,
        }
    }

    /// Lattice points evaluated over all seeds and modes.
    pub fn points(&self) -> u128 {
        let span = |(lo, hi): (i64, i64)| (i128::from(hi) - i128::from(lo) + 1).max(0) as u128;
        span(self.u_range)
            * span(self.v_range)
            * self.seeds.len() as u128
            * self.modes.len() as u128
    }

    pub fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("u_range", self.u_range), ("v_range", self.v_range)] {
            if lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "{name} [{lo}, {hi}] is empty"
                )));
            }
        }
        if self.seeds.is_empty() || self.modes.is_empty() {
            return Err(Error::InvalidArgument(
                "config needs at least one seed and one mode".into(),
            ));
        }
        let points = self.points();
        if points > GRID_LIMIT && !self.allow_large {
            return Err(Error::Guardrail {
                points,
                limit: GRID_LIMIT,
            });
        }
        Ok(())
    }

    /// Worker count: the request (or all cores), capped by
    /// `POWERSUM_FORGE_THREADS` when set.
    pub fn worker_count(&self) -> usize {
        let requested = self
            .threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let cap = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0);
        cap.map_or(requested, |c| requested.min(c)).max(1)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: ConfigRepr = serde_json::from_str(text)?;
        repr.try_into()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::from_json(&text)?;
        // Relative output paths are taken relative to the config file.
        if let (Some(out), Some(dir)) = (&cfg.output, path.parent()) {
            if out.is_relative() {
                cfg.output = Some(dir.join(out));
            }
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    fn to_integer(&self) -> Result<Integer> {
        match self {
            IntRepr::Num(n) => Ok(int(*n)),
            IntRepr::Str(s) => parse_integer(s),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ConfigRepr {
    u_range: [i64; 2],
    v_range: [i64; 2],
    seeds: Vec<[IntRepr; 4]>,
    #[serde(default = "default_modes")]
    modes: Vec<String>,
    #[serde(default = "default_true")]
    dedupe: bool,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    allow_large: bool,
    #[serde(default)]
    threads: Option<usize>,
}

fn default_modes() -> Vec<String> {
    vec!["cubic".into()]
}

fn default_true() -> bool {
    true
}

impl TryFrom<ConfigRepr> for SearchConfig {
    type Error = Error;
    fn try_from(r: ConfigRepr) -> Result<Self> {
        let seeds = r
            .seeds
            .iter()
            .map(|s| {
                let v = s
                    .iter()
                    .map(IntRepr::to_integer)
                    .collect::<Result<Vec<_>>>()?;
                CubicQuadruple::from_array(v.try_into().expect("four entries"))
            })
            .collect::<Result<Vec<_>>>()?;
        let modes = r
            .modes
            .iter()
            .map(|m| m.parse())
            .collect::<Result<Vec<_>>>()?;
        Ok(SearchConfig {
            u_range: (r.u_range[0], r.u_range[1]),
            v_range: (r.v_range[0], r.v_range[1]),
            seeds,
            modes,
            dedupe: r.dedupe,
            output: r.output,
            allow_large: r.allow_large,
            threads: r.threads,
        })
    }
}

/// Divides out the content, makes the last entry positive (cubes are odd,
/// so negating all four keeps a solution), and sorts the first three.
pub fn canonicalize(q: &[Integer; 4]) -> Result<([Integer; 4], Integer)> {
    let g = gcd_all(q.iter());
    if g.is_zero() {
        return Err(Error::InvalidArgument(
            "cannot canonicalize the zero tuple".into(),
        ));
    }
    if !is_cubic_solution(q) {
        return Err(Error::InvalidArgument(format!(
            "({}, {}, {}, {}) does not satisfy the cubic equation",
            q[0], q[1], q[2], q[3]
        )));
    }
    let sign = if q[3].is_negative() { int(-1) } else { int(1) };
    let mut c = q.clone().map(|x| x / &g * &sign);
    c[..3].sort();
    Ok((c, g))
}

/// For a canonical `(q1, q2, q3, d)` with exactly one negative `-x` among the
/// first three and the other two `y, z` positive, returns
/// `N = y^3 + z^3 = d^3 + x^3` when `{y, z}` and `{d, x}` differ.
pub fn detect_taxicab(q: &[Integer; 4]) -> Option<Integer> {
    let d = &q[3];
    if !d.is_positive() {
        return None;
    }
    let negatives: Vec<&Integer> = q[..3].iter().filter(|x| x.is_negative()).collect();
    let positives: Vec<&Integer> = q[..3].iter().filter(|x| x.is_positive()).collect();
    if negatives.len() != 1 || positives.len() != 2 {
        return None;
    }
    let x = -negatives[0];
    let mut pair_a = [positives[0].clone(), positives[1].clone()];
    let mut pair_b = [d.clone(), x.clone()];
    pair_a.sort();
    pair_b.sort();
    if pair_a == pair_b {
        return None;
    }
    let n = cube(&pair_a[0]) + cube(&pair_a[1]);
    (n == cube(d) + cube(&x)).then_some(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub seed: CubicQuadruple,
    pub mode: SearchMode,
    pub uv: (Integer, Integer),
    pub raw: [Integer; 4],
    pub reduced: [Integer; 4],
    pub content: Integer,
    pub ratio: Rational,
    pub taxicab: Option<Integer>,
}

impl SolutionRecord {
    pub fn from_raw(
        seed: &CubicQuadruple,
        mode: SearchMode,
        uv: (Integer, Integer),
        raw: [Integer; 4],
    ) -> Result<Self> {
        let (reduced, content) = canonicalize(&raw)?;
        let taxicab = detect_taxicab(&reduced);
        Ok(Self {
            seed: seed.clone(),
            mode,
            uv,
            raw,
            reduced,
            content,
            ratio: fraction_ratio(seed),
            taxicab,
        })
    }

    /// Re-checks every stored field against the others.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Verification(format!(
                "record at {:?}: {what}",
                self.uv
            )))
        };
        if !is_cubic_solution(&self.reduced) {
            return fail("reduced tuple is not a solution");
        }
        match canonicalize(&self.raw) {
            Ok((c, g)) if c == self.reduced && g == self.content => {}
            _ => return fail("reduced/content do not match raw"),
        }
        if self.ratio != fraction_ratio(&self.seed) {
            return fail("ratio differs from the seed's (a+c)/(d-b)");
        }
        if let Some(r) = numeric_ratio(&self.raw) {
            if r != self.ratio {
                return fail("(q1+q3)/(q4-q2) differs from the seed ratio");
            }
        }
        if self.taxicab != detect_taxicab(&self.reduced) {
            return fail("taxicab tag is inconsistent");
        }
        Ok(())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&RecordRepr::from(self)).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let repr: RecordRepr = serde_json::from_str(line)?;
        Self::try_from(&repr)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RecordRepr {
    seed: Vec<String>,
    uv: Vec<String>,
    raw: Vec<String>,
    reduced: Vec<String>,
    content: String,
    ratio: RationalRepr,
    taxicab: Option<String>,
    mode: String,
}

impl From<&SolutionRecord> for RecordRepr {
    fn from(r: &SolutionRecord) -> Self {
        Self {
            seed: integers(&r.seed.to_array()),
            uv: integers(&[r.uv.0.clone(), r.uv.1.clone()]),
            raw: integers(&r.raw),
            reduced: integers(&r.reduced),
            content: r.content.to_string(),
            ratio: (&r.ratio).into(),
            taxicab: r.taxicab.as_ref().map(Integer::to_string),
            mode: r.mode.to_string(),
        }
    }
}

impl TryFrom<&RecordRepr> for SolutionRecord {
    type Error = Error;
    fn try_from(r: &RecordRepr) -> Result<Self> {
        let [u, v] = parse_integers::<2>(&r.uv)?;
        Ok(Self {
            seed: parse_seed(&r.seed)?,
            mode: r.mode.parse()?,
            uv: (u, v),
            raw: parse_integers(&r.raw)?,
            reduced: parse_integers(&r.reduced)?,
            content: parse_integer(&r.content)?,
            ratio: Rational::try_from(&r.ratio)?,
            taxicab: r.taxicab.as_deref().map(parse_integer).transpose()?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    /// New records in deterministic order (seed, mode, u, v).
    pub records: Vec<SolutionRecord>,
    /// Points skipped because some entry was zero.
    pub degenerate: u64,
    /// Points dropped as duplicates of an earlier canonical quadruple.
    pub duplicates: u64,
    pub points: u64,
}

/// A seed's family prepared once for a mode.
struct Family {
    forms: FormQuadruple,
    mode: SearchMode,
    u_arg: Option<Polynomial>,
    v_arg: Option<(Polynomial, u32)>,
}

impl Family {
    fn new(seed: &CubicQuadruple, mode: SearchMode) -> Self {
        let (forms, _) = content_reduce(&sandor_generate(seed));
        let (u_arg, v_arg) = match mode {
            SearchMode::Cubic => (None, None),
            SearchMode::PowerSums(RelationMode::Q { k, m }) => {
                (Some(faulhaber(k)), Some((faulhaber(m), 1)))
            }
            SearchMode::PowerSums(RelationMode::F { k }) => {
                (Some(faulhaber(2)), Some((faulhaber(1), k)))
            }
        };
        Self {
            forms,
            mode,
            u_arg,
            v_arg,
        }
    }

    fn arg_u(&self, u: &Integer) -> Integer {
        match &self.u_arg {
            None => u.clone(),
            Some(p) => to_integer(&p.eval_int(u)).expect("power sums are integral"),
        }
    }

    fn arg_v(&self, v: &Integer) -> Integer {
        match &self.v_arg {
            None => v.clone(),
            Some((p, e)) => {
                let base = to_integer(&p.eval_int(v)).expect("power sums are integral");
                num_traits::pow(base, *e as usize)
            }
        }
    }
}

enum Point {
    Degenerate,
    Solution(Box<SolutionRecord>),
}

fn stripe(
    seed: &CubicQuadruple,
    family: &Family,
    u: i64,
    v_range: (i64, i64),
) -> Result<Vec<Point>> {
    let ui = int(u);
    let au = family.arg_u(&ui);
    let mut out = Vec::new();
    for v in v_range.0..=v_range.1 {
        if u == 0 && v == 0 {
            continue;
        }
        let vi = int(v);
        let raw = evaluate_forms(&family.forms, &au, &family.arg_v(&vi));
        if raw.iter().any(Zero::is_zero) {
            out.push(Point::Degenerate);
            continue;
        }
        out.push(Point::Solution(Box::new(SolutionRecord::from_raw(
            seed,
            family.mode,
            (ui.clone(), vi),
            raw,
        )?)));
    }
    Ok(out)
}

/// Runs the search, skipping canonical quadruples already in `known` when
/// deduplication is on. Output order does not depend on the thread count.
pub fn run_search_with(cfg: &SearchConfig, known: &HashSet<[Integer; 4]>) -> Result<SearchOutcome> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count())
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut seen = known.clone();
    let mut outcome = SearchOutcome::default();
    let us: Vec<i64> = (cfg.u_range.0..=cfg.u_range.1).collect();
    for seed in &cfg.seeds {
        for &mode in &cfg.modes {
            let family = Family::new(seed, mode);
            let stripes: Vec<Vec<Point>> = pool.install(|| {
                us.par_iter()
                    .map(|&u| stripe(seed, &family, u, cfg.v_range))
                    .collect::<Result<Vec<_>>>()
            })?;
            for point in stripes.into_iter().flatten() {
                outcome.points += 1;
                match point {
                    Point::Degenerate => outcome.degenerate += 1,
                    Point::Solution(rec) => {
                        if cfg.dedupe && !seen.insert(rec.reduced.clone()) {
                            outcome.duplicates += 1;
                        } else {
                            outcome.records.push(*rec);
                        }
                    }
                }
            }
        }
    }
    Ok(outcome)
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    run_search_with(cfg, &HashSet::new())
}

/// Reads and re-verifies every record of a JSONL file.
pub fn load_records(path: &Path) -> Result<Vec<SolutionRecord>> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = SolutionRecord::from_json_line(&line)
            .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), i + 1)))?;
        rec.verify()?;
        out.push(rec);
    }
    Ok(out)
}

/// Appends records to a JSONL file, creating it if needed.
pub fn append_records(path: &Path, records: &[SolutionRecord]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io)?;
    let mut w = BufWriter::new(file);
    for rec in records {
        writeln!(w, "{}", rec.to_json_line()).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Runs the search and appends new records to `cfg.output`. Records
/// already in the file count as known for deduplication.
pub fn run_search_to_file(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let path = cfg
        .output
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("config has no output path".into()))?;
    let known: HashSet<[Integer; 4]> = if cfg.dedupe && path.exists() {
        load_records(path)?.into_iter().map(|r| r.reduced).collect()
    } else {
        HashSet::new()
    };
    let outcome = run_search_with(cfg, &known)?;
    append_records(path, &outcome.records)?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn q(v: [i64; 4]) -> [Integer; 4] {
        v.map(int)
    }

    fn seed(a: i64, b: i64, c: i64, d: i64) -> CubicQuadruple {
        CubicQuadruple::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            canonicalize(&q([6, 8, 10, 12])).unwrap(),
            (q([3, 4, 5, 6]), int(2))
        );
        assert_eq!(
            canonicalize(&q([1, 12, -10, 9])).unwrap(),
            (q([-10, 1, 12, 9]), int(1))
        );
        assert_eq!(
            canonicalize(&q([-3, -4, -5, -6])).unwrap(),
            (q([3, 4, 5, 6]), int(1))
        );
        assert!(canonicalize(&q([0, 0, 0, 0])).is_err());
        assert!(canonicalize(&q([1, 2, 3, 4])).is_err());
    }

    #[test]
    fn taxicab_detection() {
        assert_eq!(detect_taxicab(&q([-10, 1, 12, 9])), Some(int(1729)));
        assert_eq!(detect_taxicab(&q([-9, 2, 16, 15])), Some(int(4104)));
        assert_eq!(detect_taxicab(&q([3, 4, 5, 6])), None);
        assert_eq!(detect_taxicab(&q([-2, -1, 3, 0])), None);
    }

    #[test]
    fn taxicab_is_scale_invariant_after_canonicalization() {
        for t in [-3, -1, 2, 7] {
            let raw = q([1, 12, -10, 9]).map(|x| x * t);
            let (c, _) = canonicalize(&raw).unwrap();
            assert_eq!(detect_taxicab(&c), Some(int(1729)));
        }
    }

    #[test]
    fn mode_strings() {
        assert_eq!("cubic".parse::<SearchMode>().unwrap(), SearchMode::Cubic);
        assert_eq!(
            "F:2".parse::<SearchMode>().unwrap(),
            SearchMode::PowerSums(RelationMode::F { k: 2 })
        );
        assert_eq!(
            SearchMode::PowerSums(RelationMode::Q { k: 1, m: 2 }).to_string(),
            "Q:1,2"
        );
        assert!("quartic".parse::<SearchMode>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new((-5, 5), (-5, 5), vec![seed(1, 6, 8, 9)]);
        assert_eq!(cfg.points(), 121);
        assert!(cfg.validate().is_ok());
        cfg.u_range = (3, 2);
        assert!(cfg.validate().is_err());
        cfg.u_range = (0, 9_999);
        cfg.v_range = (0, 1_000);
        assert!(matches!(cfg.validate(), Err(Error::Guardrail { .. })));
        cfg.allow_large = true;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn config_json() {
        let cfg = SearchConfig::from_json(
            r#"{"u_range":[-2,2],"v_range":[-1,1],"seeds":[[1,"6",8,9]],"modes":["cubic","Q:1,2"]}"#,
        )
        .unwrap();
        assert_eq!(cfg.seeds, vec![seed(1, 6, 8, 9)]);
        assert!(cfg.dedupe);
        assert_eq!(cfg.modes.len(), 2);
        assert!(SearchConfig::from_json(
            r#"{"u_range":[0,1],"v_range":[0,1],"seeds":[[1,2,3,4]]}"#
        )
        .is_err());
    }

    #[test]
    fn finds_1729() {
        let mut cfg = SearchConfig::new((-5, 5), (-5, 5), vec![seed(1, 6, 8, 9)]);
        let deduped = run_search(&cfg).unwrap();
        // first hit in (u, v) order: -1 + 9^3 + 10^3 = 12^3
        let first = deduped
            .records
            .iter()
            .find(|r| r.taxicab == Some(int(1729)))
            .unwrap();
        assert_eq!(first.uv, (int(-3), int(1)));
        assert_eq!(first.reduced, q([-1, 9, 10, 12]));

        cfg.dedupe = false;
        let all = run_search(&cfg).unwrap();
        assert!(all
            .records
            .iter()
            .any(|r| r.taxicab == Some(int(1729)) && r.uv == (int(1), int(2))));
        assert!(all.records.iter().all(|r| r.verify().is_ok()));
        assert_eq!(all.points, 120);
        assert_eq!(all.duplicates, 0);
        assert!(deduped.duplicates > 0);
        assert_eq!(
            deduped.records.len() as u64 + deduped.duplicates,
            all.records.len() as u64
        );
    }

    #[test]
    fn finds_163_164_5_206() {
        let cfg = SearchConfig::new((-3, 3), (-3, 3), vec![seed(7, 14, 17, 20)]);
        let out = run_search(&cfg).unwrap();
        assert!(out
            .records
            .iter()
            .any(|r| r.reduced == q([5, 163, 164, 206]) && r.uv == (int(-2), int(-3))));
        assert!(out.records.iter().all(|r| r.ratio == rat(4, 1)));
    }

    #[test]
    fn power_sum_modes_satisfy_the_equation() {
        let mut cfg = SearchConfig::new((-3, 4), (-3, 4), vec![seed(1, 8, 6, 9)]);
        cfg.modes = vec!["Q:1,2".parse().unwrap(), "F:2".parse().unwrap()];
        cfg.dedupe = false;
        let out = run_search(&cfg).unwrap();
        assert!(out.degenerate > 0);
        assert!(!out.records.is_empty());
        for r in &out.records {
            r.verify().unwrap();
        }
    }

    #[test]
    fn record_line_round_trip() {
        let rec = SolutionRecord::from_raw(
            &seed(1, 6, 8, 9),
            SearchMode::Cubic,
            (int(1), int(2)),
            q([1, 12, -10, 9]),
        )
        .unwrap();
        let line = rec.to_json_line();
        assert!(line
            .starts_with(r#"{"seed":["1","6","8","9"],"uv":["1","2"],"raw":["1","12","-10","9"]"#));
        assert!(line.contains(r#""taxicab":"1729""#));
        let back = SolutionRecord::from_json_line(&line).unwrap();
        assert_eq!(back, rec);
        let mut tampered = rec.clone();
        tampered.reduced[0] = int(-11);
        assert!(tampered.verify().is_err());
    }
}
