"""Gonality bounds for intermediate modular curves X_Delta(N).

Congruence invariants, certified gonality bounds on explicit canonical
models over finite fields and Q, Koszul Betti numbers, and an auditable
bound-propagation engine.
"""

__version__ = "0.1.0"
