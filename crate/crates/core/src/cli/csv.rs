//! Fixed-schema CSV output.
//!
//! Column order: `table_id, S0, sqrt_v0, T, K, rho, engine, n, paths, price,
//! std_err, ci_lo, ci_hi, reference, error_pct, price_full`. Prices, errors
//! and intervals are printed with four decimals; `price_full` is the shortest
//! representation that parses back to the same `f64`. Inputs are printed as
//! given. Absent values are empty fields.

use crate::payoff::PriceEstimate;
use crate::validation::error_pct;

pub const HEADER: &str =
    "table_id,S0,sqrt_v0,T,K,rho,engine,n,paths,price,std_err,ci_lo,ci_hi,reference,error_pct,price_full";

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub table_id: Option<u8>,
    pub s0: f64,
    pub sqrt_v0: f64,
    pub maturity: f64,
    pub strike: f64,
    pub rho: f64,
    pub engine: &'static str,
    pub n: Option<usize>,
    pub estimate: PriceEstimate,
    pub reference: Option<f64>,
}

impl CsvRow {
    pub fn error_pct(&self) -> Option<f64> {
        self.reference.map(|r| error_pct(self.estimate.price, r))
    }

    fn fields(&self) -> [String; 16] {
        let fixed = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_default();
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let e = &self.estimate;
        [
            self.table_id.map(|t| t.to_string()).unwrap_or_default(),
            self.s0.to_string(),
            self.sqrt_v0.to_string(),
            self.maturity.to_string(),
            self.strike.to_string(),
            self.rho.to_string(),
            self.engine.to_string(),
            opt(self.n),
            e.num_paths.map(|p| p.to_string()).unwrap_or_default(),
            format!("{:.4}", e.price),
            fixed(e.std_error),
            fixed(e.ci95.map(|c| c.0)),
            fixed(e.ci95.map(|c| c.1)),
            fixed(self.reference),
            fixed(self.error_pct()),
            e.price.to_string(),
        ]
    }

    /// One record without the trailing newline.
    pub fn render(&self) -> String {
        let mut line = write_records(std::iter::once(self.fields()));
        line.pop();
        line
    }
}

fn write_records<I, R>(records: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in records {
        w.write_record(r).expect("writing to memory");
    }
    let bytes = w.into_inner().expect("flushing to memory");
    String::from_utf8(bytes).expect("fields are UTF-8")
}

/// Header plus one line per row, newline-terminated.
pub fn render_table(rows: &[CsvRow]) -> String {
    let header = HEADER.split(',').map(str::to_string).collect::<Vec<_>>();
    write_records(std::iter::once(header).chain(rows.iter().map(|r| r.fields().to_vec())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(estimate: PriceEstimate) -> CsvRow {
        CsvRow {
            table_id: Some(3),
            s0: 110.0,
            sqrt_v0: 0.4,
            maturity: 0.0833,
            strike: 100.0,
            rho: -0.1,
            engine: "backward",
            n: Some(250),
            estimate,
            reference: Some(4.5),
        }
    }

    #[test]
    fn columns_match_header() {
        let header_cols = HEADER.split(',').count();
        let exact = row(PriceEstimate::exact(4.55541234567)).render();
        assert_eq!(exact.split(',').count(), header_cols);
        assert_eq!(exact, "3,110,0.4,0.0833,100,-0.1,backward,250,,4.5554,,,,4.5000,1.2314,4.55541234567");
        let sampled = row(PriceEstimate::sampled(2.0, 0.01, 10_000)).render();
        assert_eq!(sampled.split(',').count(), header_cols);
        assert!(sampled.contains(",10000,2.0000,0.0100,1.9804,2.0196,"));
    }

    #[test]
    fn full_precision_round_trips() {
        let v = 0.1 + 0.2;
        let line = row(PriceEstimate::exact(v)).render();
        let last: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(last.to_bits(), v.to_bits());
        let table = render_table(&[row(PriceEstimate::exact(v))]);
        assert!(table.starts_with(HEADER));
        assert_eq!(table.lines().count(), 2);
    }
}
