"""Test package for chemolab.

Test Organisation
-----------------
- Module tests (test_*.py): one file per ``chemolab`` module, plus
  ``test_acceptance.py`` for end-to-end numerical claims and
  ``test_properties.py`` for hypothesis fuzzing.
- BDD tests (features/): Gherkin feature files with step definitions in
  steps/.
- Shared fixtures (conftest.py): grids, canned parameters and the
  ``write_config`` factory; faults and ``CHEMOLAB_OUTPUT_DIR`` are reset
  around every test.
- Shared helpers (helpers.py): relative norms and CSV readers.

Running Tests
-------------
Run everything except the slow simulations::

    pytest -m "not slow"

Run the acceptance tests only::

    pytest -m acceptance
"""
