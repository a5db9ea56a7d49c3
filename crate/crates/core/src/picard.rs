//! The Picard group of the moduli space of semistable `G`-bundles.
//!
//! `Pic` is free of rank one, generated by the theta bundle of `V(w_d)`
//! for any fundamental weight `w_d` of minimal Dynkin index. Under the
//! embedding into `Pic` of the affine Grassmannian its image is generated
//! by the `m_G`-th power of the ample generator, and in genus one the
//! moduli space is the weighted projective space `P(1, a_1^vee, ..., a_k^vee)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{consistency, Error, Result};
use crate::rep_theory::{dynkin_index, omega_d, IrrepLabel};
use crate::root_system::{LieType, RootDatum, Series};
use crate::wps::{wps_from_group, WpsWeights};

pub const PIC_DESCRIPTION: &str = "free of rank 1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardReport {
    pub lie: LieType,
    pub genus: u32,
    pub pic: &'static str,
    /// Every admissible `d` (1-based, ascending).
    pub generator_weights: Vec<usize>,
    /// The first entry of `generator_weights`.
    pub canonical_generator: usize,
    #[serde(rename = "m_G")]
    pub m_g: u64,
    pub beta_image_exponent: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus1_model: Option<WpsWeights>,
    pub locally_factorial: bool,
}

impl PicardReport {
    /// Name of the generating line bundle, e.g. `Theta_V(w8)`.
    pub fn generator_name(&self) -> String {
        format!("Theta_V(w{})", self.canonical_generator)
    }
}

pub fn report(lie: LieType, genus: u32) -> Result<PicardReport> {
    if genus == 0 {
        return Err(Error::Unsupported(
            "genus 0; only curves of genus >= 1 are covered".into(),
        ));
    }
    let datum = RootDatum::build(lie)?;
    report_for(&datum, genus)
}

pub fn report_for(datum: &RootDatum, genus: u32) -> Result<PicardReport> {
    if genus == 0 {
        return Err(Error::Unsupported(
            "genus 0; only curves of genus >= 1 are covered".into(),
        ));
    }
    let lie = datum.lie();
    let od = omega_d(datum)?;
    let model = wps_from_group(datum);
    if model.generator_degree() != od.m_g {
        return Err(consistency(format!(
            "{lie}: lcm of (1, comarks) is {} but m_G is {}",
            model.generator_degree(),
            od.m_g
        )));
    }

    let by_series = matches!(lie.series(), Series::A | Series::C);
    let locally_factorial = od.m_g == 1;
    if locally_factorial != by_series {
        return Err(consistency(format!(
            "{lie}: m_G = {} disagrees with the series criterion for local factoriality",
            od.m_g
        )));
    }

    Ok(PicardReport {
        lie,
        genus,
        pic: PIC_DESCRIPTION,
        canonical_generator: od.canonical(),
        generator_weights: od.indices,
        m_g: od.m_g,
        beta_image_exponent: od.m_g,
        genus1_model: (genus == 1).then_some(model),
        locally_factorial,
    })
}

/// `Theta_V` as a power of the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaExponent {
    /// Dynkin index `m_V`, the exponent of `beta(Theta_V)`.
    pub dynkin_index: BigUint,
    /// `m_V / m_G`.
    pub power_of_generator: BigUint,
}

pub fn theta_exponent(datum: &RootDatum, lambda: &IrrepLabel) -> Result<ThetaExponent> {
    let m_v = dynkin_index(datum, lambda)?;
    let m_g = BigUint::from(datum.comark_lcm());
    let (q, r) = m_v.div_rem(&m_g);
    if !r.is_zero() {
        return Err(consistency(format!(
            "{}: m_V = {m_v} for V{} is not divisible by m_G = {m_g}",
            datum.lie(),
            lambda.highest_weight()
        )));
    }
    Ok(ThetaExponent {
        dynkin_index: m_v,
        power_of_generator: q,
    })
}
