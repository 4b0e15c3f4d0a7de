//! Subset sum, knapsack, partition and scheduling.

use num_bigint::BigUint;
use num_traits::One;

use super::embed_plus;
use crate::error::{Error, Result};
use crate::model::Element;
use crate::problems::{Instance, Payload, ProblemId};

fn subset_sum(inst: &Instance) -> Result<(&[BigUint], &BigUint)> {
    match &inst.payload {
        Payload::SubsetSum { numbers, target } => Ok((numbers, target)),
        _ => Err(Error::Internal("SS instance has no subset-sum payload".into())),
    }
}

fn partition(inst: &Instance) -> Result<&[BigUint]> {
    match &inst.payload {
        Payload::Partition { numbers } => Ok(numbers),
        _ => Err(Error::Internal("P instance has no partition payload".into())),
    }
}

pub(crate) fn ss_to_ks(src: &Instance) -> Result<Instance> {
    let (numbers, m) = subset_sum(src)?;
    Instance::new(
        ProblemId::KS,
        Payload::Knapsack {
            prices: numbers.to_vec(),
            weights: numbers.to_vec(),
            min_profit: m.clone(),
            max_weight: m.clone(),
        },
    )
}

pub(crate) fn embed_ss_to_ks(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..subset_sum(src)?.0.len() as u32).map(Element::Obj).collect())
}

pub(crate) fn lift_ss_to_ks(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_ss_to_ks, src, tgt, s, &[])
}

/// Appends M+1 and total+1-M. The side holding the last number must then
/// pick numbers summing to M and can never take M+1.
pub(crate) fn ss_to_p(src: &Instance) -> Result<Instance> {
    let (numbers, m) = subset_sum(src)?;
    let total: BigUint = numbers.iter().sum();
    let big = m + 1u32;
    let last = if *m <= &total + 1u32 {
        &total + 1u32 - m
    } else {
        // M exceeds every subset sum; make the total odd so nothing splits evenly
        let rest = &total + &big;
        if rest.bit(0) {
            BigUint::default()
        } else {
            BigUint::one()
        }
    };
    let mut out = numbers.to_vec();
    out.push(big);
    out.push(last);
    Instance::new(ProblemId::P, Payload::Partition { numbers: out })
}

pub(crate) fn embed_ss_to_p(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..subset_sum(src)?.0.len() as u32).map(Element::Num).collect())
}

pub(crate) fn lift_ss_to_p(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let last = Element::Num(subset_sum(src)?.0.len() as u32 + 1);
    embed_plus(embed_ss_to_p, src, tgt, s, &[last])
}

pub(crate) fn p_to_tms(src: &Instance) -> Result<Instance> {
    let numbers = partition(src)?;
    let total: BigUint = numbers.iter().sum();
    Instance::new(
        ProblemId::TMS,
        Payload::Scheduling {
            jobs: numbers.to_vec(),
            deadline: total >> 1u32,
        },
    )
}

pub(crate) fn embed_p_to_tms(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..partition(src)?.len() as u32).map(Element::Job).collect())
}

pub(crate) fn lift_p_to_tms(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_p_to_tms, src, tgt, s, &[])
}
