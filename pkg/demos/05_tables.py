"""Small versions of the comparison tables.

Full desk-scale tables come from the command line, e.g.
``icbench table1 --out table1.md``; this script runs a reduced grid.
"""
from icbench import ExperimentSpec, Family, Scenario, run_methods_table
from icbench.report import to_csv, to_markdown_table

reports = []
for truth in Family:
    for n in (25, 100):
        spec = ExperimentSpec(Scenario(truth, "laplace"), n, reps=20_000, boot_reps=500, nb=50, seed=3)
        reports += run_methods_table(spec)

print(to_markdown_table(reports, "table2", sizes=(25, 100)))
print(to_csv(reports)[:400])
