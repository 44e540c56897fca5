"""falg — Exact scalars, tensor fields and free bracket monomials."""
