"""Regenerate the three reference tables and compare them cell by cell."""

from besselsum import PrecisionContext
from besselsum.tables import all_tables, cells_to_csv, summary

ctx = PrecisionContext(digits=120)
cells = all_tables(ctx)
print(cells_to_csv(cells, ctx, figures=12))
print(summary(cells))
