use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{parse, MultiPoly};

/// `⟨f1, ..., fr⟩` in `K[x1..xn]`. Zero generators are dropped; the zero
/// ideal keeps a single zero generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<MultiPoly>,
    nvars: usize,
    field: FieldSpec,
}

impl Ideal {
    pub fn new(gens: Vec<MultiPoly>) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyIdeal)?;
        let (nvars, field) = (first.nvars(), first.field());
        if gens.iter().any(|g| g.nvars() != nvars || g.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let mut kept: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if kept.is_empty() {
            kept.push(MultiPoly::zero(nvars, field));
        }
        Ok(Ideal {
            gens: kept,
            nvars,
            field,
        })
    }

    pub fn principal(f: MultiPoly) -> Self {
        Self::new(vec![f]).expect("single generator")
    }

    /// Parses each generator with the polynomial grammar.
    pub fn parse(gens: &[&str], nvars: usize, field: FieldSpec) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|g| parse(g, nvars, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(polys)
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    /// Number of generators `r`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest generator degree `δ` (zero for the zero ideal).
    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(MultiPoly::degree).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> IdealFile {
        IdealFile {
            field: self.field.to_string(),
            nvars: self.nvars,
            gens: self.gens.iter().map(ToString::to_string).collect(),
        }
    }
}

/// JSON form `{"field": "QQ", "nvars": 2, "gens": ["x1*x2 + 1"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub field: String,
    pub nvars: usize,
    pub gens: Vec<String>,
}

impl IdealFile {
    pub fn to_ideal(&self) -> Result<Ideal> {
        let field: FieldSpec = self.field.parse()?;
        let gens: Vec<&str> = self.gens.iter().map(String::as_str).collect();
        Ideal::parse(&gens, self.nvars, field)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Dataset(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
