//! Serializable command results and their table/csv/json renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub trait Render: Serialize {
    fn table(&self) -> String;
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>);

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Table => self.table(),
            Format::Csv => {
                let (header, rows) = self.csv_rows();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header).unwrap();
                for row in rows {
                    w.write_record(&row).unwrap();
                }
                String::from_utf8(w.into_inner().unwrap()).unwrap()
            }
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VisibleReport {
    pub version: u32,
    pub poly: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub visible: u64,
    pub invisible: u64,
    pub density: f64,
}

impl Render for VisibleReport {
    fn table(&self) -> String {
        format!(
            "F          {}\nN          {}\nvisible    {}\ninvisible  {}\ndensity    {:.6}\n",
            self.poly, self.n, self.visible, self.invisible, self.density
        )
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        (
            vec!["poly", "N", "visible", "invisible", "density"],
            vec![vec![
                self.poly.clone(),
                self.n.to_string(),
                self.visible.to_string(),
                self.invisible.to_string(),
                self.density.to_string(),
            ]],
        )
    }
}

/// Exact sums are `"num/den"` strings; the chain fields are null when `N`
/// does not exceed the pair threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GcdSumReport {
    pub version: u32,
    pub f: String,
    pub m: u32,
    pub poly: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub threshold: u64,
    #[serde(rename = "S")]
    pub s: String,
    pub s_direct: String,
    pub s_rearranged: String,
    pub identity_ok: bool,
    pub invisible: Option<u64>,
    pub ef_count: Option<u64>,
    pub block_rhs: Option<String>,
    pub bound_rhs: Option<String>,
    pub chain_ok: Option<bool>,
}

impl Render for GcdSumReport {
    fn table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "F             ({})^{}", self.f, self.m).unwrap();
        writeln!(out, "N             {}", self.n).unwrap();
        writeln!(out, "threshold     {}", self.threshold).unwrap();
        writeln!(out, "S direct      {}", self.s_direct).unwrap();
        writeln!(out, "S rearranged  {}", self.s_rearranged).unwrap();
        writeln!(out, "identity      {}", self.identity_ok).unwrap();
        if let Some(inv) = self.invisible {
            writeln!(out, "invisible     {inv}").unwrap();
            writeln!(out, "E count       {}", opt(&self.ef_count)).unwrap();
            writeln!(out, "N*S + #E      {}", opt(&self.block_rhs)).unwrap();
            writeln!(out, "N*S + 2nN     {}", opt(&self.bound_rhs)).unwrap();
            writeln!(out, "chain         {}", opt(&self.chain_ok)).unwrap();
        }
        out
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        (
            vec![
                "f",
                "m",
                "N",
                "threshold",
                "S_direct",
                "S_rearranged",
                "identity_ok",
                "invisible",
                "ef_count",
                "block_rhs",
                "bound_rhs",
                "chain_ok",
            ],
            vec![vec![
                self.f.clone(),
                self.m.to_string(),
                self.n.to_string(),
                self.threshold.to_string(),
                self.s_direct.clone(),
                self.s_rearranged.clone(),
                self.identity_ok.to_string(),
                opt(&self.invisible),
                opt(&self.ef_count),
                opt(&self.block_rhs),
                opt(&self.bound_rhs),
                opt(&self.chain_ok),
            ]],
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveReport {
    pub version: u32,
    pub f: String,
    pub s: u64,
    pub r: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub count: usize,
    pub points: Vec<(u64, u64)>,
}

impl Render for CurveReport {
    fn table(&self) -> String {
        let mut out = format!(
            "{}*f(y) - {}*f(x) = 0, f = {}, [1,{}]^2: {} points\n",
            self.s, self.r, self.f, self.n, self.count
        );
        for (x, y) in &self.points {
            writeln!(out, "  ({x}, {y})").unwrap();
        }
        out
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .points
            .iter()
            .map(|(x, y)| vec![x.to_string(), y.to_string()])
            .collect();
        (vec!["x", "y"], rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub visible: u64,
    pub invisible: u64,
    pub density: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Reference {
    pub value: f64,
    pub error_bound: f64,
    pub status: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityReport {
    pub version: u32,
    pub poly: String,
    pub rows: Vec<DensityRow>,
    pub reference: Option<Reference>,
    pub fitted_exponent: Option<f64>,
    pub exponent_target: Option<f64>,
}

impl Render for DensityReport {
    fn table(&self) -> String {
        let mut out = format!("F = {}\n", self.poly);
        match &self.reference {
            Some(r) => writeln!(
                out,
                "reference {:.6} ({}, error <= {:.1e})",
                r.value, r.status, r.error_bound
            )
            .unwrap(),
            None => writeln!(out, "reference unknown").unwrap(),
        }
        writeln!(
            out,
            "{:>10} {:>14} {:>14} {:>10}",
            "N", "visible", "invisible", "density"
        )
        .unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "{:>10} {:>14} {:>14} {:>10.6}",
                row.n, row.visible, row.invisible, row.density
            )
            .unwrap();
        }
        if let Some(e) = self.fitted_exponent {
            write!(out, "fitted exponent {e:.4}").unwrap();
            if let Some(t) = self.exponent_target {
                write!(out, " (target {t})").unwrap();
            }
            out.push('\n');
        }
        out
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let reference = opt(&self.reference.as_ref().map(|r| r.value));
        let fitted = opt(&self.fitted_exponent);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.n.to_string(),
                    row.visible.to_string(),
                    row.invisible.to_string(),
                    row.density.to_string(),
                    reference.clone(),
                    fitted.clone(),
                ]
            })
            .collect();
        (
            vec![
                "N",
                "visible",
                "invisible",
                "density",
                "reference",
                "fitted_exponent",
            ],
            rows,
        )
    }
}

/// Complex numbers as `[re, im]`.
pub type Complex = [f64; 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Factor {
    pub alpha: Complex,
    pub beta: Complex,
    pub gamma: Complex,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub version: u32,
    pub f: String,
    pub s: u64,
    pub r: u64,
    pub precision_bits: u32,
    pub linear_factor_found: bool,
    pub delta_lower_bound: u32,
    pub residual_bound: f64,
    pub certificate: String,
    pub factors: Vec<Factor>,
}

fn complex(c: &Complex) -> String {
    format!("{}{:+}i", c[0], c[1])
}

impl Render for ProbeReport {
    fn table(&self) -> String {
        let mut out =
            format!(
            "{}*f(y) - {}*f(x), f = {}\nlinear factor  {}\ndelta >=       {}\ncertificate    {}\n",
            self.s,
            self.r,
            self.f,
            if self.linear_factor_found { "found" } else { "none" },
            self.delta_lower_bound,
            self.certificate
        );
        for fac in &self.factors {
            writeln!(
                out,
                "  ({})x + ({})y + ({})  residual {:.1e}",
                complex(&fac.alpha),
                complex(&fac.beta),
                complex(&fac.gamma),
                fac.residual
            )
            .unwrap();
        }
        out
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let head = vec![
            self.s.to_string(),
            self.r.to_string(),
            self.linear_factor_found.to_string(),
            self.delta_lower_bound.to_string(),
        ];
        let rows = if self.factors.is_empty() {
            vec![[head, vec![String::new(); 4]].concat()]
        } else {
            self.factors
                .iter()
                .map(|fac| {
                    let tail = vec![
                        complex(&fac.alpha),
                        complex(&fac.beta),
                        complex(&fac.gamma),
                        fac.residual.to_string(),
                    ];
                    [head.clone(), tail].concat()
                })
                .collect()
        };
        (
            vec![
                "s",
                "r",
                "linear_factor_found",
                "delta_lower_bound",
                "alpha",
                "beta",
                "gamma",
                "residual",
            ],
            rows,
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExcludedForm {
    pub a: String,
    pub u: String,
    pub v: String,
    pub b: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyReport {
    pub version: u32,
    pub poly: String,
    pub degree: usize,
    pub base: String,
    pub m: u32,
    pub squarefree: String,
    pub distinct_roots: usize,
    pub n_f: u64,
    pub n_base: u64,
    pub pair_threshold: u64,
    pub excluded_form: Option<ExcludedForm>,
}

impl PolyReport {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let excluded = self
            .excluded_form
            .as_ref()
            .map(|e| format!("{}*({}*x+({}))^{}", e.a, e.u, e.v, e.b))
            .unwrap_or_default();
        vec![
            ("poly", self.poly.clone()),
            ("degree", self.degree.to_string()),
            ("base", self.base.clone()),
            ("m", self.m.to_string()),
            ("squarefree", self.squarefree.clone()),
            ("distinct_roots", self.distinct_roots.to_string()),
            ("n_F", self.n_f.to_string()),
            ("n_f", self.n_base.to_string()),
            ("pair_threshold", self.pair_threshold.to_string()),
            ("excluded_form", excluded),
        ]
    }
}

impl Render for PolyReport {
    fn table(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(k, v)| format!("{k:<15} {v}\n"))
            .collect()
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let rows = self
            .fields()
            .into_iter()
            .map(|(k, v)| vec![k.to_string(), v])
            .collect();
        (vec!["field", "value"], rows)
    }
}
