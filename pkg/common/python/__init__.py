# falg — shared helpers (logging, version)
