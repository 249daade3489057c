"""Minimal level sets of Y^{p,q} and the spectrum of their Jacobi operators.

The Jacobi spectrum is computed with fibre coefficients taken from the
inverse induced metric. The label (0,0,0,+-1) has charged-sphere energy 2,
not 1, so it lies above zero and the enumerated index is 1.
"""
import numpy as np

from minstab import ypq
from minstab.tensor import second_fundamental_form

print(" (p,q)      b          ybar        Tr K^2     Ric(n,n)+Tr K^2   index")
for p, q in [(2, 1), (3, 1), (3, 2), (5, 4), (7, 3)]:
    m = ypq.ypq_model(p, q)
    rep = ypq.ypq_stability_report(m)
    print(f" ({p},{q})  {m.b:.6f}  {m.ybar:+.8f}  {ypq.trace_k2(m):.6f}  "
          f"{ypq.jacobi_shift(m):14.6f}   {rep.index:4d}")

m = ypq.ypq_model(2, 1)
s = second_fundamental_form(ypq.ypq_foliation(m), m.ybar, [1.0, 0.2, 0.3, 0.4])
print(f"\nY^(2,1): engine Tr K^2 = {s.trace_k2:.12f}, closed form {ypq.trace_k2(m):.12f}")

rep = ypq.ypq_stability_report(m)
print("\nlowest Jacobi eigenvalues on Y^(2,1), label (k, N_alpha, N_psi, N_phi):")
for e in rep.lowest[:8]:
    print(f"  {tuple(e.label)!s:16} {e.stability_eig:+.6f}")
print("labels listed as negative in the published theorem:")
for lab, val in rep.extra["published_negative_labels"].items():
    print(f"  {lab:16} {val:+.6f}")

rows = ypq.exceptional_scan(200)
worst = min(rows, key=lambda r: r.lambda_tilde)
print(f"\nexceptional labels, {len(rows)} coprime pairs with p <= 200: "
      f"minimum {worst.lambda_tilde:.4f} at (p,q)=({worst.p},{worst.q}), label {tuple(worst.label)}")

curve = np.array(ypq.ybar_curve(11))
print("\n  eps     ybar")
for e, y in curve:
    print(f"  {e:.3f}  {y:+.6f}")
