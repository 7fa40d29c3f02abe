//! Library side of each subcommand. Every function returns the text the
//! binary prints.

use std::fmt::Write as _;
use std::str::FromStr;

use delball_core::balanced::BigEvaluator;
use delball_core::bounds::{BoundReport, ReportSubject, Reporter};
use delball_core::exact::{
    count_canonical_recursive, count_exact, enumerate_ball, DEFAULT_ENUM_BUDGET,
};
use delball_core::ops::balancing_chain;
use delball_core::{BigCount, RunProfile, Word};

use crate::error::{CliError, CliResult};

pub const BUDGET_ENV: &str = "DELBALL_ENUM_BUDGET";

/// Enumeration budget from the environment, or the default.
pub fn enum_budget() -> CliResult<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Input(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))
        }),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    Enumerate,
    Dp,
    Canonical,
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "enumerate" => Ok(Method::Enumerate),
            "dp" => Ok(Method::Dp),
            "canonical" => Ok(Method::Canonical),
            _ => Err(CliError::Input(format!(
                "unknown method {s:?}, expected auto, enumerate, dp or canonical"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountInput {
    Word(Word),
    Runs(RunProfile),
}

impl CountInput {
    /// Parses a word or a `lengths;symbols` profile. The alphabet size is
    /// inferred from the largest symbol when `q` is absent.
    pub fn parse(word: Option<&str>, runs: Option<&str>, q: Option<u32>) -> CliResult<Self> {
        match (word, runs) {
            (Some(w), None) => Ok(CountInput::Word(match q {
                Some(q) => Word::parse(w, q)?,
                None => Word::parse_inferred(w)?,
            })),
            (None, Some(r)) => Ok(CountInput::Runs(match q {
                Some(q) => RunProfile::parse(r, q)?,
                None => RunProfile::parse_inferred(r)?,
            })),
            _ => Err(CliError::Input(
                "give exactly one of --word and --runs".into(),
            )),
        }
    }

    pub fn word(&self) -> Word {
        match self {
            CountInput::Word(w) => w.clone(),
            CountInput::Runs(p) => p.to_word(),
        }
    }
}

pub fn count(input: &CountInput, t: i64, method: Method, budget: u64) -> CliResult<BigCount> {
    let canonical_profile = |input: &CountInput| -> Option<RunProfile> {
        let profile = match input {
            CountInput::Word(w) => w.runs(),
            CountInput::Runs(p) => p.clone(),
        };
        (profile.is_canonical() && profile.alphabet_size() >= 2 && profile.run_count() > 0)
            .then_some(profile)
    };
    match method {
        Method::Dp => Ok(count_exact(&input.word(), t)),
        Method::Enumerate => Ok(BigCount::from(
            enumerate_ball(&input.word(), t, budget)?.len(),
        )),
        Method::Canonical => {
            let profile = canonical_profile(input).ok_or_else(|| {
                CliError::Input("canonical method needs runs labelled 0, 1, .. cyclically over at least two symbols".into())
            })?;
            Ok(count_canonical_recursive(
                profile.lengths(),
                profile.alphabet_size(),
                t,
            )?)
        }
        Method::Auto => match (input, canonical_profile(input)) {
            (CountInput::Runs(_), Some(profile)) => Ok(count_canonical_recursive(
                profile.lengths(),
                profile.alphabet_size(),
                t,
            )?),
            _ => Ok(count_exact(&input.word(), t)),
        },
    }
}

pub fn bounds(q: u32, n: i64, r: i64, t: i64, with_exact: bool) -> CliResult<BoundReport> {
    Ok(Reporter::new().report(&ReportSubject::Params { q, n, r }, t, with_exact)?)
}

pub fn report_json(report: &BoundReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn chain(word: &Word, t: i64) -> CliResult<String> {
    let n = word.len();
    let r = word.run_count();
    if r == 0 || !n.is_multiple_of(r) {
        let k = if r == 0 { 0 } else { n.div_ceil(r) };
        return Err(CliError::Input(format!(
            "the run count {r} does not divide the length {n}, so no balanced word of the same length exists; \
             lengthen runs to reach length {} (run length {k}) or use `delball bounds --q {} --n {n} --r {r} -t {t}` for the padded upper bound",
            r * k,
            word.alphabet_size().max(2),
        )));
    }
    let steps = balancing_chain::<BigCount>(word, t)?;
    let width = word.len().max(6);
    let mut out = String::new();
    writeln!(
        out,
        "{:>3}  {:<width$}  {:<20}  {:>6}  size",
        "i", "string", "runs", "sumsq"
    )
    .unwrap();
    for step in &steps {
        let runs = step
            .profile
            .lengths()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        writeln!(
            out,
            "{:>3}  {:<width$}  {:<20}  {:>6}  {}",
            step.index,
            step.profile.to_word(),
            runs,
            step.sum_of_squares,
            step.ball_size
        )
        .unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BalancedMethod {
    #[default]
    Closed,
    Recursive,
    Dp,
}

impl FromStr for BalancedMethod {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "closed" => Ok(BalancedMethod::Closed),
            "recursive" => Ok(BalancedMethod::Recursive),
            "dp" => Ok(BalancedMethod::Dp),
            _ => Err(CliError::Input(format!(
                "unknown method {s:?}, expected closed, recursive or dp"
            ))),
        }
    }
}

/// `|D_t|` of the balanced word (or its one-shorter variant with `prime`).
pub fn balanced(
    r: usize,
    k: usize,
    q: u32,
    t: i64,
    prime: bool,
    method: BalancedMethod,
) -> CliResult<BigCount> {
    let mut ev = BigEvaluator::new(k, q)?;
    let r_i = r as i64;
    Ok(match (method, prime) {
        (BalancedMethod::Closed, false) => ev.b_closed(r_i, t),
        (BalancedMethod::Closed, true) => ev.b_prime_closed(r_i, t),
        (BalancedMethod::Recursive, false) => ev.b_recursive(r_i, t),
        (BalancedMethod::Recursive, true) => ev.b_prime_recursive(r_i, t),
        (BalancedMethod::Dp, false) => count_exact(&delball_core::word::balanced_word(r, k, q)?, t),
        (BalancedMethod::Dp, true) => {
            count_exact(&delball_core::word::balanced_prime_word(r, k, q)?, t)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_text(
        word: Option<&str>,
        runs: Option<&str>,
        q: Option<u32>,
        t: i64,
        method: Method,
    ) -> String {
        let input = CountInput::parse(word, runs, q).unwrap();
        count(&input, t, method, DEFAULT_ENUM_BUDGET)
            .unwrap()
            .to_string()
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_text(
                Some("000000011022200000333333"),
                None,
                Some(4),
                7,
                Method::Auto
            ),
            "326"
        );
        assert_eq!(count_text(None, Some("4;0"), None, 2, Method::Auto), "1");
        assert_eq!(
            count_text(Some("0101"), None, Some(2), 1, Method::Auto),
            "4"
        );
        assert_eq!(
            count_text(Some("0101"), None, Some(2), 1, Method::Enumerate),
            "4"
        );
        assert_eq!(
            count_text(None, Some("6,3,1,4,4,6;0,1,2,0,1,2"), None, 7, Method::Auto),
            "434"
        );
        assert_eq!(
            count_text(
                None,
                Some("6,3,1,4,4,6;0,1,2,0,1,2"),
                None,
                7,
                Method::Canonical
            ),
            "434"
        );
        assert_eq!(
            count_text(None, Some("6,3,1,4,4,6;0,1,2,0,1,2"), None, 7, Method::Dp),
            "434"
        );
    }

    #[test]
    fn count_errors_map_to_exit_codes() {
        assert_eq!(
            CountInput::parse(Some("01a"), None, Some(2))
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            CountInput::parse(None, None, None).unwrap_err().exit_code(),
            2
        );
        let input = CountInput::parse(Some("0101010101010101"), None, Some(2)).unwrap();
        assert_eq!(
            count(&input, 8, Method::Enumerate, 100)
                .unwrap_err()
                .exit_code(),
            3
        );
        let input = CountInput::parse(Some("0011"), None, Some(3)).unwrap();
        assert_eq!(
            count(&input, 1, Method::Canonical, 100)
                .unwrap()
                .to_string(),
            "2"
        );
        let input = CountInput::parse(Some("0022"), None, Some(3)).unwrap();
        assert_eq!(
            count(&input, 1, Method::Canonical, 100)
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn bounds_examples() {
        let rep = bounds(3, 120, 24, 40, false).unwrap();
        assert_eq!(
            rep.new_upper,
            BigEvaluator::new(5, 3).unwrap().b_closed(24, 40)
        );
        assert_eq!(
            bounds(2, 4, 4, 1, true).unwrap().exact,
            Some(BigCount::from(4u32))
        );
        assert_eq!(
            bounds(2, 5, 1, 3, true).unwrap().exact,
            Some(BigCount::from(1u32))
        );
        assert_eq!(bounds(2, 5, 6, 3, false).unwrap_err().exit_code(), 2);
        let json: serde_json::Value =
            serde_json::from_str(&report_json(&bounds(2, 4, 4, 1, true).unwrap())).unwrap();
        assert_eq!(json["exact"], serde_json::json!("4"));
    }

    #[test]
    fn chain_table() {
        let word = Word::parse("000000011022200000333333", 4).unwrap();
        let text = chain(&word, 7).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 12);
        assert!(lines[1].ends_with(" 326"));
        assert!(lines[11].ends_with(" 666"));
        assert!(lines[11].contains("4,4,4,4,4,4"));

        let text = chain(&Word::parse("000111222", 3).unwrap(), 3).unwrap();
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn chain_rejects_uneven_lengths() {
        let err = chain(&Word::parse("0001122", 3).unwrap(), 2).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("delball bounds --q 3 --n 7 --r 3"));
    }

    #[test]
    fn balanced_methods_agree() {
        for method in [
            BalancedMethod::Closed,
            BalancedMethod::Recursive,
            BalancedMethod::Dp,
        ] {
            assert_eq!(
                balanced(6, 4, 3, 7, false, method).unwrap().to_string(),
                "666"
            );
            assert_eq!(
                balanced(5, 3, 3, 4, true, method).unwrap(),
                balanced(5, 3, 3, 4, true, BalancedMethod::Dp).unwrap()
            );
        }
        assert!(balanced(3, 0, 3, 1, false, BalancedMethod::Closed).is_err());
    }
}
