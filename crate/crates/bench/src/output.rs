use std::fmt::Write as _;

pub const CSV_HEADER: &str = "experiment,model,question,construction,mode,measure,N,trials,seed,value";

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub experiment: String,
    pub model: String,
    pub question: String,
    pub construction: String,
    pub mode: String,
    pub measure: String,
    pub n: u32,
    pub trials: u32,
    pub seed: u64,
    pub value: f64,
}

impl Row {
    fn key(&self) -> (&str, &str, &str, u32, &str, &str, &str) {
        (
            &self.experiment,
            &self.model,
            &self.question,
            self.n,
            &self.construction,
            &self.mode,
            &self.measure,
        )
    }
}

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header plus rows sorted by experiment, model, question and `N`.
pub fn to_csv(rows: &[Row]) -> String {
    let mut sorted: Vec<&Row> = rows.iter().collect();
    sorted.sort_by(|a, b| a.key().cmp(&b.key()));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in sorted {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{:.4}",
            field(&r.experiment),
            field(&r.model),
            field(&r.question),
            field(&r.construction),
            field(&r.mode),
            field(&r.measure),
            r.n,
            r.trials,
            r.seed,
            r.value
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(model: &str, n: u32, value: f64) -> Row {
        Row {
            experiment: "recognize".into(),
            model: model.into(),
            question: "(1a)#x,y".into(),
            construction: "ao".into(),
            mode: "rhs".into(),
            measure: "inner".into(),
            n,
            trials: 10,
            seed: 3,
            value,
        }
    }

    #[test]
    fn sorted_and_quoted() {
        let csv = to_csv(&[row("hrr", 4, 1.0), row("ga", 10, 99.04999), row("ga", 4, 2.0 / 3.0)]);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "recognize,ga,\"(1a)#x,y\",ao,rhs,inner,4,10,3,0.6667");
        assert!(lines[2].starts_with("recognize,ga,\"(1a)#x,y\",ao,rhs,inner,10,"));
        assert!(lines[3].starts_with("recognize,hrr,"));
    }
}
