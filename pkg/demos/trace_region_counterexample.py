"""Why the trace condition needs the region hypothesis.

The matrix below is nonnegative and symmetric with trace 1/4. Its third
eigenvalue, 0.34, exceeds the trace, so "lambda3 <= trace" cannot hold for
every realizable list. The list sits outside the region trace >= lambda1/2,
and the checker reports exactly that.
"""

from sniep5.sniep import check_conditions
from sniep5.spectral import EXAMPLE_SPECTRUM, eigen_jacobi, example_matrix, verify_example_matrix

m = example_matrix()
print("matrix:")
print(m.to_text())

spectrum = eigen_jacobi(m)
print("\neigenvalues (Jacobi):", ", ".join(f"{v:.12f}" for v in spectrum.values))
print("expected:            ", ", ".join(str(float(v)) for v in EXAMPLE_SPECTRUM))

result = verify_example_matrix(detail=True)
print(f"\ntrace = {result.trace}, lambda3 > trace: {result.lambda3_exceeds_trace}, "
      f"trace < lambda1/2: {result.trace_below_half_perron}")

verdict = check_conditions(EXAMPLE_SPECTRUM)
print("checker verdict:", verdict.kind.value)
