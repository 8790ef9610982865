# Exact sparse polynomials and the heat-polynomial families.
from fractions import Fraction

from hopfcole.families import hermite2, hermite_lacunary, hermite3_complete, laguerre2, hybrid_l2
from hopfcole.multipoly import MultiPoly, parse_poly

XY = ("x", "y")

# coefficients stay rational all the way through
p = parse_poly("x^2 + 2*y", XY)
print("p         =", p)
print("p^2       =", p * p)
print("d/dx p^2  =", (p * p).partial_derivative("x"))
print("p(1/3, -2) =", p.evaluate_exact({"x": Fraction(1, 3), "y": -2}))

# heat polynomials: H_n solves Z_y = Z_xx and starts from x^n at y = 0
for n in range(6):
    print(f"H_{n}(x,y) =", hermite2(n))

# the lacunary family solves the m-th order heat equation
H = hermite_lacunary(9, 3)
print("H_9^(3)    =", H)
print("Z_y == Z_xxx:", H.partial_derivative("y") == H.diff("x", 3))

# three-variable complete family, and what happens when one variable is switched off
H3 = hermite3_complete(4)
print("H_4(x1,x2,x3) =", H3)
print("x3 -> 0       =", H3.substitute("x3", MultiPoly.zero(H3.variables)))

print("L_3(x,t)   =", laguerre2(3))
print("2L_4(x,y)  =", hybrid_l2(4))

# the JSON form is exact and canonical
print(hermite2(3).to_json())
