"""K_r-factor and perfect matching counts, their expectations, and the random edge-deletion process."""
