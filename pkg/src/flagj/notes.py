"""Stores the fixed texts that reports attach to their results."""

INFEASIBLE_REASON = "obstructed triple not all non-complex"

PREFACTOR_NOTE = """
Ω is computed as dω, Ω(X_a, X_b, X_-(a+b)) = m_ab(ω_a + ω_b - ω_(a+b)),
with no further factor 1/12. A worked rank-2 example in the literature
displays a 1/12 in front of this sum yet reports the value of the bare sum;
the bare sum is what the twisted operator requires.
""".strip()

TWO_FORM_NOTE = """
ω is complex-valued; no reality condition on ω is imposed.
""".strip()

THETA_NOTE = """
Θ is taken inside the simple system {simple_system} of the positive system
selected by the structure.
""".strip()

SURVEY_NOTE = """
Sign patterns are counted for the seeds a_i = i, x_i = i + 1 on Θ.
needs_omega tells whether unrelated parameters on <Θ>+ need a nonzero Ω.
""".strip()

ORACLE_AGREES = "Brute-force oracle agrees ({checked} triples evaluated)."
