"""Restricting a system over Gamma along F.

Run with ``python demo/restriction.py``.
"""

# %%
from strata.decomposition import decompose
from strata.fixtures import load_fixture
from strata.repcat import is_projective
from strata.stratification import check_ss, compat_gamma_check, restrict_F

fx = load_fixture("section6_restriction")
ext = fx.ext
ss = check_ss(fx.thetas, fx.order)
print("Psi dims:", [P.dims for P in fx.thetas], "valid:", ss.valid)

# %% Lambda as a right Gamma-module is not projective: e1 Lambda is a proper quotient of e1 Gamma
R = ext.lambda_right_gamma()
print("projective:", is_projective(R), " summand dims:", [s.module.dims for s in decompose(R)])

# %% the compatibility tables and the restricted system are still computed
r = compat_gamma_check(ext, ss)
print(r.status, r.data["C1_ext1"], r.data["C2_ext2"])
r = restrict_F(ext, ss)
print(r.status, "F dims:", r.data["F_dims"], "systems:", r.data["n_systems"])
