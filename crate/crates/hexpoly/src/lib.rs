//! Exact enumeration toolkit for polyomino families on the hexagonal
//! lattice.
//!
//! Three independent engines produce area counts for the same families and
//! are tested against each other:
//!
//! * [`enumerator`] walks every fixed polyomino up to a given area and
//!   classifies it (exponential, the ground truth for small areas),
//! * [`columndp`] transfers counts column by column for the cheesy
//!   families (polynomial per term, hundreds of terms are cheap),
//! * [`temperley`] solves small symbolic systems over rational functions
//!   and yields closed-form area generating functions.
//!
//! [`asymptotics`] turns the closed forms into certified growth constants
//! and amplitudes, and [`exactalg`] supplies the exact polynomial and
//! rational-function arithmetic everything else is built on.

pub mod asymptotics;
pub mod columndp;
pub mod enumerator;
pub mod exactalg;
pub mod hexgrid;
pub mod temperley;
