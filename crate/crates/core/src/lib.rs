//! Exact representations of U_q(sl(n)) on weight-basis modules, the braided
//! module structure given by the q-adjoint module, and the orbit algebra
//! family A_{ħ,q}.

pub mod adjoint;
pub mod braidedmod;
pub mod braiding;
pub mod export;
pub mod linalg;
pub mod operator;
pub mod orbit;
pub mod repcore;
pub mod report;
pub mod ring;
