"""Lifting the canonical system of a small split extension along G.

Run with ``python demo/lift_ej2.py``.
"""

# %%
from strata.decomposition import find_isomorphism
from strata.extension import build_split_extension
from strata.repcat import simple
from strata.stratification import canonical_delta_lift_check, check_ss, compat_lambda_check, lift_G

ext = build_split_extension("""algebra ej2 over Q {
  vertices: 1 2 3;
  arrows: b: 3->1, a: 1->2;
  relations: a*b;
}""", "b")
print(ext)
print("ideal basis:", ext.ideal_labels())

# %% Lambda keeps only a; its standard modules for 1 < 2 < 3 are the simples
delta = [simple(ext.lam, i) for i in range(3)]
ss = check_ss(delta)
print("Delta is a stratifying system:", ss.valid)
print("Ext^1 table:", ss.ext1)

# %% I (x) Delta(3) is Delta(1), the other tensors vanish
for i, D in enumerate(delta):
    T = ext.ideal_tensor_lambda(D)
    print(f"I (x) Delta({i + 1}) dims {T.dims}, iso to Delta(1): {find_isomorphism(T, delta[0]) is not None}")

# %% compatibility and the lifted system over Gamma
print(compat_lambda_check(ext, ss).to_dict())
r = lift_G(ext, delta)
print("G Delta dims:", r.data["lifted_dims"], "is a system:", r.data["lifted_is_ss"])
print("G Delta(i) = Delta_Gamma(i):", canonical_delta_lift_check(ext).data["G_delta_iso"])

# %% the order 3 < 1 < 2 keeps the axioms but breaks C1
bad = check_ss(delta, [2, 0, 1])
r = compat_lambda_check(ext, bad)
print("system valid:", bad.valid, "status:", r.status, "witness:", r.witnesses)
print("lifted system valid:", lift_G(ext, delta, [2, 0, 1]).data["lifted_is_ss"])
