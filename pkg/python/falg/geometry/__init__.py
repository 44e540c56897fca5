"""falg — Anchored bundles, algebroids and the free algebroid construction."""
