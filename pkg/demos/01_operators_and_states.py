"""Tour of the building blocks: observables, words, GHZ states, eigenphases.

Everything below is exact. Amplitudes and phases are cyclotomic integers in
Z[alpha] with alpha = exp(2*pi*i/9), so the printed equalities are integer
identities, not float coincidences.
"""

import numpy as np

from qudit_mermin import (
    LocalObservable,
    SettingWord,
    apply_word,
    bloch_check,
    eigenphase,
    ghz_state,
    word_position,
)

# ---- the three qutrit settings ------------------------------------------

print("Local settings (rows of the phase table are exponents of alpha):")
for name, j in (("X", 0), ("Y", 1), ("V", -1)):
    obs = LocalObservable.rotated_shift(3, j)
    print(f"  {name}: rotation index {j:+d}, phase exponents {obs.phase_table}")
    print(f"     rotational covariance holds exactly: {bloch_check(obs)}")

print("\nDense matrix of Y (float view of the exact phases):")
print(np.round(LocalObservable.rotated_shift(3, 1).matrix(), 3))

# ---- words and circle positions ------------------------------------------

print("\nWords and their circle positions (net rotation mod 9):")
for s in ("XXX", "XYV", "YYY", "VVV", "YYX", "VVVV"):
    word = SettingWord.from_string(s)
    print(f"  {s}: position {word_position(word)}")

# ---- GHZ states and exact eigenphases -------------------------------------

psi = ghz_state(0, 3, 3)
print("\nGHZ state (index 0, three qutrits):", psi)

yyy = SettingWord.from_string("YYY")
print("YYY acting on it:", apply_word(yyy, psi))
print("-> exact eigenphase exponent (of alpha):", eigenphase(yyy).exponent)
print("   i.e. eigenvalue omega, since alpha**3 = omega")

# Words at positions not divisible by 3 are not eigenoperators at all:
try:
    eigenphase(SettingWord.from_string("YYX"))
except ValueError as exc:
    print("\nYYX has no eigenphase on this state:", exc)
