//! Cross sections `I|_{x1=α}` and their serialized datasets.
//!
//! A slice lives in the `(n-1)`-variable ring: after substituting `x1 = α`
//! the variables `x2..xn` are renumbered `x1..x_{n-1}`. Membership is
//! preserved in the sense that `f ∈ I + ⟨x1 - α⟩` iff `f|α ∈ I|α`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::ideal::Ideal;
use crate::poly::{parse, MonomialOrder, MultiPoly};

/// Generators of `I|_{x1=α}` in the renumbered `(n-1)`-variable ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceRecord {
    pub alpha: FieldElement,
    pub gens: Vec<MultiPoly>,
}

impl SliceRecord {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.gens.clone()).expect("slice records keep at least one generator")
    }
}

/// The normalized generator `g = λ f(α, y)` of a principal slice, in the
/// renumbered `(n-1)`-variable ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionalRecord {
    pub alpha: FieldElement,
    pub g: MultiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceMode {
    FullSlices,
    SectionalGenerators,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceData {
    Full(Vec<SliceRecord>),
    Sectional(Vec<SectionalRecord>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDataset {
    pub field: FieldSpec,
    /// Variable count of the sliced ideal (records use `nvars - 1`).
    pub nvars: usize,
    pub data: SliceData,
}

impl SliceDataset {
    pub fn len(&self) -> usize {
        match &self.data {
            SliceData::Full(r) => r.len(),
            SliceData::Sectional(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alphas(&self) -> Vec<FieldElement> {
        match &self.data {
            SliceData::Full(r) => r.iter().map(|s| s.alpha.clone()).collect(),
            SliceData::Sectional(r) => r.iter().map(|s| s.alpha.clone()).collect(),
        }
    }
}

fn require_sliceable(nvars: usize) -> Result<()> {
    if nvars < 2 {
        Err(Error::TooFewVariables(2))
    } else {
        Ok(())
    }
}

/// `I|_{x1=α}`; zero generators are dropped and an all-zero slice is `⟨0⟩`.
pub fn slice_ideal(ideal: &Ideal, alpha: &FieldElement) -> Result<SliceRecord> {
    require_sliceable(ideal.nvars())?;
    if alpha.field() != ideal.field() {
        return Err(Error::FieldMismatch);
    }
    let mut gens: Vec<MultiPoly> = ideal
        .gens()
        .iter()
        .map(|f| f.substitute_x1(alpha).drop_first_var())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        gens.push(MultiPoly::zero(ideal.nvars() - 1, ideal.field()));
    }
    Ok(SliceRecord {
        alpha: alpha.clone(),
        gens,
    })
}

/// `f(α, y)` scaled to leading coefficient one under grlex on `x2..xn`, kept
/// in the `n`-variable ring (no `x1`). Zero when `f(α, y)` vanishes.
pub fn sectional_generator(f: &MultiPoly, alpha: &FieldElement) -> Result<MultiPoly> {
    require_sliceable(f.nvars())?;
    if alpha.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(f.substitute_x1(alpha).monic(MonomialOrder::GrlexY))
}

fn check_distinct(points: &[FieldElement]) -> Result<()> {
    let seen: HashSet<&FieldElement> = points.iter().collect();
    if seen.len() != points.len() {
        Err(Error::DuplicatePoints)
    } else {
        Ok(())
    }
}

pub fn build_dataset(ideal: &Ideal, points: &[FieldElement], mode: SliceMode) -> Result<SliceDataset> {
    require_sliceable(ideal.nvars())?;
    check_distinct(points)?;
    if points.iter().any(|a| a.field() != ideal.field()) {
        return Err(Error::FieldMismatch);
    }
    let data = match mode {
        SliceMode::FullSlices => SliceData::Full(
            points
                .par_iter()
                .map(|a| slice_ideal(ideal, a))
                .collect::<Result<Vec<_>>>()?,
        ),
        SliceMode::SectionalGenerators => {
            if ideal.len() != 1 {
                return Err(Error::NotPrincipal);
            }
            let f = &ideal.gens()[0];
            SliceData::Sectional(
                points
                    .par_iter()
                    .map(|a| {
                        Ok(SectionalRecord {
                            alpha: a.clone(),
                            g: sectional_generator(f, a)?.drop_first_var()?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    Ok(SliceDataset {
        field: ideal.field(),
        nvars: ideal.nvars(),
        data,
    })
}

#[derive(Serialize, Deserialize)]
struct DatasetFile {
    field: String,
    nvars: usize,
    mode: String,
    slices: Vec<RecordFile>,
}

#[derive(Serialize, Deserialize)]
struct RecordFile {
    alpha: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    gens: Option<Vec<String>>,
}

impl SliceDataset {
    /// `{"field":..,"nvars":..,"mode":"sectional"|"full","slices":[..]}`;
    /// sectional records carry `"g"`, full records carry `"gens"`.
    pub fn to_json(&self) -> String {
        let (mode, slices) = match &self.data {
            SliceData::Full(recs) => (
                "full",
                recs.iter()
                    .map(|r| RecordFile {
                        alpha: r.alpha.to_string(),
                        g: None,
                        gens: Some(r.gens.iter().map(ToString::to_string).collect()),
                    })
                    .collect(),
            ),
            SliceData::Sectional(recs) => (
                "sectional",
                recs.iter()
                    .map(|r| RecordFile {
                        alpha: r.alpha.to_string(),
                        g: Some(r.g.to_string()),
                        gens: None,
                    })
                    .collect(),
            ),
        };
        serde_json::to_string(&DatasetFile {
            field: self.field.to_string(),
            nvars: self.nvars,
            mode: mode.to_string(),
            slices,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DatasetFile =
            serde_json::from_str(text).map_err(|e| Error::Dataset(e.to_string()))?;
        let field: FieldSpec = file.field.parse()?;
        require_sliceable(file.nvars)?;
        let sub = file.nvars - 1;
        let data = match file.mode.as_str() {
            "sectional" => SliceData::Sectional(
                file.slices
                    .iter()
                    .map(|r| {
                        let g = r
                            .g
                            .as_deref()
                            .ok_or_else(|| Error::Dataset("sectional record without `g`".into()))?;
                        Ok(SectionalRecord {
                            alpha: FieldElement::parse(field, &r.alpha)?,
                            g: parse(g, sub, field)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            "full" => SliceData::Full(
                file.slices
                    .iter()
                    .map(|r| {
                        let gens = r
                            .gens
                            .as_ref()
                            .ok_or_else(|| Error::Dataset("full record without `gens`".into()))?;
                        let mut polys = gens
                            .iter()
                            .map(|g| parse(g, sub, field))
                            .collect::<Result<Vec<_>>>()?;
                        polys.retain(|p| !p.is_zero());
                        if polys.is_empty() {
                            polys.push(MultiPoly::zero(sub, field));
                        }
                        Ok(SliceRecord {
                            alpha: FieldElement::parse(field, &r.alpha)?,
                            gens: polys,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            other => return Err(Error::Dataset(format!("unknown mode `{other}`"))),
        };
        let ds = SliceDataset {
            field,
            nvars: file.nvars,
            data,
        };
        check_distinct(&ds.alphas())?;
        Ok(ds)
    }
}
