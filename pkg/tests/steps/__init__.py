"""BDD step definition modules."""
