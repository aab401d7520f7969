//! Limit cycles: collocation, continuation, Floquet multipliers, events.
