"""
Random configurations against the product bounds
================================================

Sample disks around poles on random ray systems, normalize the ray system,
and compare the product of inner radii with the closed-form bound.  The
log-margin should never go negative.
"""
import io

from freepoles.harness import run_verification

for thm in (1, 2):
    sink = io.StringIO()
    summary = run_verification(thm, [2, 3, 4, 5], [0.25, 0.5, 1.0], 2000, root_seed=42, sink=sink)
    print(f"T{thm}: {summary.trials} trials, {summary.violations} violations, "
          f"min log-margin {summary.min_margin:.4f}, digest {summary.config_digest}")
    print("  first report:", sink.getvalue().splitlines()[0][:120], "...")
