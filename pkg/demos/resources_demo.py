"""Coherence, concurrence and discord on canonical two-qubit states."""

import numpy as np

from dipolarqb import concurrence, l1_coherence, quantum_discord

def show(name, rho):
    r = quantum_discord(rho)
    print(f"{name:22s} coherence={l1_coherence(rho):8.5f}"
          f"  concurrence={concurrence(rho):8.5f}"
          f"  discord={r.discord:8.5f}  classical={r.classical_correlation:8.5f}")

# Bell state: maximal on every count
v = np.zeros(4, dtype=complex)
v[0] = v[3] = 1 / np.sqrt(2)
show("Bell (|00>+|11>)/sqrt2", np.outer(v, v.conj()))

# product of two pure states tilted off the z axis
plus = np.array([1.0, 1.0]) / np.sqrt(2)
show("|+> x |+>", np.outer(np.kron(plus, plus), np.kron(plus, plus)))

# classically correlated mixture: correlations, no discord
show("(|00><00|+|11><11|)/2", np.diag([0.5, 0, 0, 0.5]).astype(complex))

# maximally mixed: nothing at all
show("identity / 4", np.eye(4, dtype=complex) / 4)

# Werner family: discord survives where entanglement dies
print()
for w in (0.2, 1 / 3, 0.5, 0.8):
    rho = w * np.outer(v, v.conj()) + (1 - w) * np.eye(4) / 4
    show(f"Werner w={w:.3f}", rho)
