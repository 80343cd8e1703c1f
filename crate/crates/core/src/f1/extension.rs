use super::module::ModuleHom;
use crate::error::{Error, Result};

/// A map of cofibration sequences
///
/// ```text
///  A  >-->  B  -->> B/A
///  |a       |b       |c
///  A' >-->  B' -->> B'/A'
/// ```
///
/// where `c` has source and target the canonical cofibres of the rows.
#[derive(Debug, Clone)]
pub struct ExtensionDiagram {
    pub top: ModuleHom,
    pub bottom: ModuleHom,
    pub left: ModuleHom,
    pub middle: ModuleHom,
    pub right: ModuleHom,
}

/// Checks that the middle vertical map of a valid diagram is a cofibration.
///
/// Over group monoids the outer verticals being cofibrations forces this,
/// so a negative answer on a valid diagram is reported as an internal
/// consistency error rather than as `false`.
pub fn extension_property_check(d: &ExtensionDiagram) -> Result<bool> {
    if !d.top.source().monoid().is_group_monoid() {
        return Err(Error::NotGroupMonoid);
    }
    for (name, f) in [
        ("top", &d.top),
        ("bottom", &d.bottom),
        ("left", &d.left),
        ("right", &d.right),
    ] {
        if !f.is_cofibration()? {
            return Err(Error::InvalidInput(format!(
                "{name} map is not a cofibration"
            )));
        }
    }
    let (q_top, p_top) = d.top.cofiber()?;
    let (q_bot, p_bot) = d.bottom.cofiber()?;
    if *d.right.source() != q_top || *d.right.target() != q_bot {
        return Err(Error::InvalidInput(
            "right map must run between the row cofibres".into(),
        ));
    }
    if d.left.source() != d.top.source() || d.left.target() != d.bottom.source() {
        return Err(Error::InvalidInput(
            "left map ends do not match the rows".into(),
        ));
    }
    if d.middle.source() != d.top.target() || d.middle.target() != d.bottom.target() {
        return Err(Error::InvalidInput(
            "middle map ends do not match the rows".into(),
        ));
    }
    if d.top.then(&d.middle)?.map() != d.left.then(&d.bottom)?.map() {
        return Err(Error::NotCommuting("left square".into()));
    }
    if p_top.then(&d.right)?.map() != d.middle.then(&p_bot)?.map() {
        return Err(Error::NotCommuting("right square".into()));
    }
    if d.middle.is_cofibration()? {
        Ok(true)
    } else {
        Err(Error::Internal(
            "extension property failed on a valid diagram".into(),
        ))
    }
}
