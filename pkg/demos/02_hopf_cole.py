# Rational Burgers solutions from the Hopf-Cole transform, checked exactly.
from hopfcole.families import hermite_lacunary
from hopfcole.pde import burgers_residual
from hopfcole.ratfunc import hopf_cole, normalize_content, phi_solution

u = phi_solution(4, 2)
print("Phi_4^(2) =", normalize_content(u))
print("same as d/dx log H_4:", u == hopf_cole(hermite_lacunary(4, 2), "x"))

# the residual of u_y = d/dx (d/dx + u)^(m-1) u is a rational function;
# its numerator is the zero polynomial for every member of the family
for m in range(2, 6):
    zeros = [burgers_residual(phi_solution(n, m), m).is_zero() for n in range(1, 9)]
    print(f"m={m}: residual zero for n=1..8 ->", all(zeros))

# a solution of one order does not solve the next
r = burgers_residual(phi_solution(4, 3), 2)
print("Phi_4^(3) in the m=2 equation leaves", len(r.num), "numerator terms")
