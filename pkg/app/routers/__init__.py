"""HTTP routers of the invariants service."""
