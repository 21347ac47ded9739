"""The two six-vertex examples: Ext-projective systems and G as an
equivalence on filtered modules.

Run with ``python demo/six_vertex.py``.
"""

# %%
from strata.fixtures import load_fixture
from strata.homology import ext_dim
from strata.repcat import hom_dim
from strata.stratification import build_epss, check_ss, epss_lift_condition, gequiv_check, is_filtered

# %% with the arrow s the family is not a stratifying system
fx = load_fixture("six_vertex_sigma")
ss = check_ss(fx.thetas, fx.order)
print("valid:", ss.valid, "witnesses:", ss.report().witnesses)
print("Hom(Theta(2), Theta(1)) =", ss.hom[1][0], " Ext^1(Theta(1), Theta(2)) =", ss.ext1[0][1])

# %% the tensor identities still hold
ext = fx.ext
tensors = [ext.ideal_tensor_lambda(T) for T in fx.thetas]
print("I (x) Theta dims:", [T.dims for T in tensors])
print("I (x) Theta filtered:", [is_filtered(T, fx.thetas, ss.order) for T in tensors])
ep = build_epss(ss, require_valid=False)
print("Q dims:", [Q.dims for Q in ep.Q], "Q indecomposable:", ep.verify()["Q_indecomposable"])
print("Ext^1(Q, I (x) Theta) all zero:", all(ext_dim(1, Q, T) == 0 for Q in ep.Q for T in tensors))

# %% without s: a genuine system, and I (x) Theta(2) is not filtered
fx = load_fixture("six_vertex_no_sigma")
ext = fx.ext
ss = check_ss(fx.thetas, fx.order)
N = ext.ideal_tensor_lambda(fx.thetas[1])
print("valid:", ss.valid, " N dims:", N.dims, " N filtered:", is_filtered(N, fx.thetas, ss.order))
print("Hom(Theta, I (x) Theta):", [[hom_dim(a, ext.ideal_tensor_lambda(b)) for b in fx.thetas] for a in fx.thetas])

# %% G restricted to F(Theta), sampled
ep = build_epss(ss)
print("Ext^1(Q, I (x) Theta) = 0:", epss_lift_condition(ext, ep).data["condition_holds"])
r = gequiv_check(ext, ep, samples=100, seed=0)
print("gequiv:", r.status, "samples:", r.data["samples"])
