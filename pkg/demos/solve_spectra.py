"""Decide a few five-element lists and print a certificate where one exists."""

import numpy as np

from sniep5.sniep import decide

LISTS = [
    "1, 1, 1, -1, -1",
    "1, 0.5, 0.3, -0.4, -0.6",
    "1, 0.7, 0.7, -0.9, -0.9",
    "1, 0.35, 0.34, -0.72, -0.72",
    "3, 1, 0, -2, -2",
]

np.set_printoptions(precision=6, suppress=True)
for text in LISTS:
    verdict = decide(text)
    line = f"{text:<28} -> {verdict.kind.value}"
    if verdict.failed_condition is not None:
        line += f" (fails {verdict.failed_condition.value})"
    print(line)
    if verdict.certificate is not None:
        m = verdict.certificate.matrix.to_numpy()
        print(m)
        print("  eigenvalues:", np.round(np.linalg.eigvalsh(m)[::-1], 12))
        for step in verdict.certificate.steps:
            print("  step:", step)
    print()
