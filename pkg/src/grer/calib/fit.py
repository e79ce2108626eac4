"""Forward model of the MUT campaign, synthetic data and the two-stage PSO fit.

Stage 1 fits permittivity and conductivity on the specular (SP) powers.
Stage 2 holds them fixed and fits the scattering coefficient and lobe
exponent jointly on SP and diffuse (DS) powers.  All powers are in dB
relative to the transmitter constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..patterns import K_grer_pade, K_grer_series, K_rer, Model, NormMode
from ..scatter import Material, Polarization, complex_permittivity, fresnel_coefficient
from .campaign import CampaignGeometry, Orientation, PoseGeometry, pose_geometry
from .classify import Label, MpcRecord, SpecularRegion, angles_from_direction, classify_mpcs
from .metrics import rmse_db
from .pso import SwarmConfig, pso_minimize

C_LIGHT = 299_792_458.0
N_FACETS = 24


@dataclass(frozen=True)
class CalibBounds:
    S: tuple = (0.0, 1.0)
    eps_r: tuple = (1.0, 10.0)
    sigma: tuple = (0.0, 0.5)
    alpha_r: tuple = (0.5, 50.0)

    def __post_init__(self):
        for name in ("S", "eps_r", "sigma", "alpha_r"):
            lo, hi = getattr(self, name)
            if not lo < hi:
                raise ValueError(f"bounds for {name}: low must be below high")
        if self.S[0] < 0 or self.S[1] > 1:
            raise ValueError("S bounds must lie within [0, 1]")
        if self.eps_r[0] < 1 or self.sigma[0] < 0 or self.alpha_r[0] <= 0:
            raise ValueError("bounds outside the physical range")


@dataclass(frozen=True)
class CalibSample:
    orientation: Orientation
    sp_db: float  # nan when the specular point misses the MUT
    ds_db: float  # -inf when there is no diffuse power


@dataclass
class CalibDataset:
    samples: list
    campaign: CampaignGeometry = field(default_factory=CampaignGeometry)
    pol: Polarization = Polarization.TE
    n_facets: int = N_FACETS

    def __iter__(self):
        return iter(self.samples)

    def __len__(self):
        return len(self.samples)

    @property
    def orientations(self):
        return [s.orientation for s in self.samples]


@dataclass
class FitResult:
    material: Material
    model: Model
    rmse_db: float
    trace: list
    stage1_trace: list
    stage1_rmse_db: float

    def to_dict(self) -> dict:
        m = self.material
        return {
            "model": self.model.value,
            "material": {"eps_r": m.eps_r, "sigma": m.sigma, "S": m.S,
                         "alpha_r": m.alpha_r, "kappa": m.kappa},
            "rmse_db": self.rmse_db,
            "stage1_rmse_db": self.stage1_rmse_db,
            "loss_trace": list(self.trace),
            "stage1_loss_trace": list(self.stage1_trace),
        }


def _norm_mode(model: Model) -> NormMode:
    return NormMode.PADE if model is Model.GRER else NormMode.K_SQRT_COS


def _k_factor(model: Model, alpha, mode: NormMode) -> np.ndarray:
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    if model is Model.GRER:
        if mode is NormMode.PADE:
            return np.array([K_grer_pade(a) for a in alpha])
        return np.array([K_grer_series(a).value for a in alpha])
    return np.array([K_rer(int(a)).value for a in alpha])


class ForwardModel:
    """Geometry-only precomputation for a list of orientations.

    Power evaluations are vectorized over a batch of parameter vectors so the
    whole swarm is evaluated at once.
    """

    def __init__(self, campaign: CampaignGeometry, orientations, pol=Polarization.TE,
                 n_facets: int = N_FACETS):
        self.campaign = campaign
        self.orientations = list(orientations)
        self.pol = Polarization(pol)
        self.poses: list[PoseGeometry] = [pose_geometry(campaign, o, n_facets)
                                          for o in self.orientations]
        self.cos_i = np.stack([p.cos_i for p in self.poses])
        self.cos_psi = np.stack([p.cos_psi for p in self.poses])
        self.geo_weight = np.stack([
            np.sqrt(p.cos_i * p.cos_s) * p.dS / (p.r_i * p.r_s) ** 2 for p in self.poses])
        self.sp_index = np.array([i for i, p in enumerate(self.poses) if p.sp_cos_i is not None],
                                 dtype=int)
        self.sp_cos_i = np.array([self.poses[i].sp_cos_i for i in self.sp_index])
        self.sp_path = np.array([self.poses[i].sp_path for i in self.sp_index])

    def gamma2(self, eps_r, sigma, cos_i):
        eps = complex_permittivity(eps_r, sigma, self.campaign.freq)
        return np.abs(fresnel_coefficient(eps, cos_i, self.pol)) ** 2

    def sp_power(self, eps_r, sigma) -> np.ndarray:
        """Specular power at the orientations that have a specular point.

        Scalars give shape ``(n_sp,)``; ``(batch,)`` arrays give ``(batch, n_sp)``.
        """
        g2 = self.gamma2(np.asarray(eps_r, dtype=float)[..., None],
                         np.asarray(sigma, dtype=float)[..., None], self.sp_cos_i)
        return g2 / self.sp_path**2

    def facet_weight(self, eps_r: float, sigma: float) -> np.ndarray:
        """Material- and geometry-dependent factor of every facet, before S and the lobe."""
        return self.gamma2(eps_r, sigma, self.cos_i) * self.geo_weight

    def ds_power(self, S, alpha, weight, model: Model, mode: NormMode | None = None) -> np.ndarray:
        """Total diffuse power per orientation, shape ``(batch, n_orientations)``."""
        model = Model(model)
        mode = _norm_mode(model) if mode is None else NormMode(mode)
        if mode is NormMode.EXACT:
            raise ValueError("the campaign forward model needs a K * sqrt(cos) normalization")
        S = np.atleast_1d(np.asarray(S, dtype=float))
        alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
        if model is Model.RER:
            alpha = np.rint(alpha)
        out = np.empty((alpha.size, len(self.poses)))
        k = _k_factor(model, alpha, mode)
        for b, a in enumerate(alpha):
            if model is Model.GRER:
                lobe = np.exp(-a * (1.0 - self.cos_psi))
            else:
                lobe = (0.5 * (1.0 + self.cos_psi)) ** a
            out[b] = np.sum(weight * lobe, axis=1)
        return (S**2 / k)[:, None] * out


def _db(p):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(p)


def synth_dataset(material: Material, campaign: CampaignGeometry = CampaignGeometry(),
                  orientations=None, noise_db: float = 0.0, seed: int = 0,
                  model: Model = Model.GRER, pol=Polarization.TE,
                  n_facets: int = N_FACETS) -> CalibDataset:
    """Simulated SP and DS powers for each orientation, with optional dB noise."""
    from .campaign import default_orientations
    orientations = default_orientations() if orientations is None else list(orientations)
    fwd = ForwardModel(campaign, orientations, pol, n_facets)
    model = Model(model)
    sp = np.full(len(orientations), np.nan)
    sp[fwd.sp_index] = _db(fwd.sp_power(material.eps_r, material.sigma))
    w = fwd.facet_weight(material.eps_r, material.sigma)
    ds = _db(fwd.ds_power(material.S, material.alpha_r, w, model)[0])
    rng = np.random.default_rng(seed)
    if noise_db > 0:
        sp = sp + rng.normal(0.0, noise_db, sp.shape)
        ds = ds + rng.normal(0.0, noise_db, ds.shape)
    samples = [CalibSample(o, float(a), float(b)) for o, a, b in zip(orientations, sp, ds)]
    return CalibDataset(samples, campaign, Polarization(pol), n_facets)


def pso_fit(dataset: CalibDataset, bounds: CalibBounds = CalibBounds(),
            model: Model = Model.GRER, seed: int = 0, swarm: SwarmConfig = SwarmConfig(),
            kappa: float = 0.0) -> FitResult:
    """Two-stage calibration of (eps_r, sigma) then (S, alpha_r)."""
    if len(dataset) == 0:
        raise ValueError("empty dataset")
    model = Model(model)
    fwd = ForwardModel(dataset.campaign, dataset.orientations, dataset.pol, dataset.n_facets)
    sp_meas = np.array([s.sp_db for s in dataset.samples])
    ds_meas = np.array([s.ds_db for s in dataset.samples])
    has_sp = np.isfinite(sp_meas[fwd.sp_index]) if fwd.sp_index.size else np.zeros(0, bool)
    if not has_sp.any():
        raise ValueError("dataset has no specular powers; cannot fit eps_r and sigma")
    sp_idx = fwd.sp_index[has_sp]
    sp_target = sp_meas[sp_idx]
    ds_mask = np.isfinite(ds_meas)

    def sp_loss_matrix(eps_r, sigma):
        pred = _db(fwd.sp_power(eps_r, sigma))[..., has_sp]
        return pred - sp_target

    def stage1(x):
        err = sp_loss_matrix(x[:, 0], x[:, 1])
        return np.sqrt(np.mean(err**2, axis=1))

    ss1 = np.random.SeedSequence(seed)
    seed1, seed2 = (int(s.generate_state(1)[0]) for s in ss1.spawn(2))
    lo1 = [bounds.eps_r[0], bounds.sigma[0]]
    hi1 = [bounds.eps_r[1], bounds.sigma[1]]
    r1 = pso_minimize(stage1, lo1, hi1, seed1, swarm)
    eps_r, sigma = (float(v) for v in r1.x)

    weight = fwd.facet_weight(eps_r, sigma)
    sp_err = sp_loss_matrix(eps_r, sigma)
    ds_target = ds_meas[ds_mask]

    def stage2(x):
        ds = _db(fwd.ds_power(x[:, 0], x[:, 1], weight, model))[:, ds_mask]
        err = np.concatenate([np.broadcast_to(sp_err, (x.shape[0], sp_err.size)),
                              ds - ds_target], axis=1)
        return np.sqrt(np.mean(err**2, axis=1))

    lo2 = [bounds.S[0], bounds.alpha_r[0]]
    hi2 = [bounds.S[1], bounds.alpha_r[1]]
    r2 = pso_minimize(stage2, lo2, hi2, seed2, swarm)
    S, alpha = (float(v) for v in r2.x)
    if model is Model.RER:
        alpha = float(max(1, round(alpha)))
    material = Material(eps_r, sigma, S, alpha, kappa)
    return FitResult(material, model, float(r2.loss), r2.trace, r1.trace, float(r1.loss))


def predict(dataset: CalibDataset, material: Material, model: Model = Model.GRER):
    """Predicted (sp_db, ds_db) arrays for the dataset's orientations."""
    fwd = ForwardModel(dataset.campaign, dataset.orientations, dataset.pol, dataset.n_facets)
    sp = np.full(len(dataset), np.nan)
    sp[fwd.sp_index] = _db(fwd.sp_power(material.eps_r, material.sigma))
    w = fwd.facet_weight(material.eps_r, material.sigma)
    ds = _db(fwd.ds_power(material.S, material.alpha_r, w, Model(model))[0])
    return sp, ds


def dataset_rmse(dataset: CalibDataset, material: Material, model: Model = Model.GRER) -> float:
    """RMSE in dB of the DS powers predicted by ``material``."""
    _, ds = predict(dataset, material, model)
    meas = np.array([s.ds_db for s in dataset.samples])
    mask = np.isfinite(meas)
    return rmse_db(ds[mask], meas[mask])


# ---------------------------------------------------------------------------
# Multipath-component view of the campaign

def specular_regions(campaign: CampaignGeometry, orientations) -> list:
    out = []
    for o in orientations:
        sp = pose_geometry(campaign, o, 1).sp_point
        out.append(None if sp is None else SpecularRegion.from_points(campaign.rx, sp))
    return out


def synth_mpcs(material: Material, campaign: CampaignGeometry = CampaignGeometry(),
               orientations=None, noise_db: float = 0.0, seed: int = 0,
               model: Model = Model.GRER, pol=Polarization.TE, n_facets: int = N_FACETS):
    """One SP component (when the specular point hits the MUT) plus one DS
    component per illuminated facet, for each orientation."""
    from .campaign import default_orientations
    orientations = default_orientations() if orientations is None else list(orientations)
    fwd = ForwardModel(campaign, orientations, pol, n_facets)
    model = Model(model)
    rng = np.random.default_rng(seed)
    rx = campaign.rx
    weight = fwd.facet_weight(material.eps_r, material.sigma)
    k = _k_factor(model, [material.alpha_r], _norm_mode(model))[0]
    a = material.alpha_r if model is Model.GRER else round(material.alpha_r)
    records = []
    sp_pow = dict(zip(fwd.sp_index.tolist(),
                      fwd.sp_power(material.eps_r, material.sigma).tolist()))
    for idx, (o, pose) in enumerate(zip(orientations, fwd.poses)):
        if idx in sp_pow:
            az, el = angles_from_direction(pose.sp_point - rx)
            delay = pose.sp_path / C_LIGHT * 1e9
            gain = 10 * math.log10(sp_pow[idx]) + (rng.normal(0, noise_db) if noise_db else 0.0)
            records.append(MpcRecord(az, el, delay, gain, idx))
        if model is Model.GRER:
            lobe = np.exp(-a * (1.0 - fwd.cos_psi[idx]))
        else:
            lobe = (0.5 * (1.0 + fwd.cos_psi[idx])) ** a
        p = material.S**2 / k * weight[idx] * lobe
        centres, _ = campaign.plate(o).facets(n_facets)
        for f in np.flatnonzero(p > 0):
            az, el = angles_from_direction(centres[f] - rx)
            delay = (pose.r_i[f] + pose.r_s[f]) / C_LIGHT * 1e9
            gain = 10 * math.log10(p[f]) + (rng.normal(0, noise_db) if noise_db else 0.0)
            records.append(MpcRecord(az, el, delay, gain, idx))
    return records


def aggregate_mpcs(mpcs, labels, orientations, campaign: CampaignGeometry = CampaignGeometry(),
                   pol=Polarization.TE, n_facets: int = N_FACETS) -> CalibDataset:
    """Total SP and DS power per orientation from labelled components."""
    n = len(orientations)
    sp = np.zeros(n)
    ds = np.zeros(n)
    n_sp = np.zeros(n, dtype=int)
    for m, lab in zip(mpcs, labels):
        p = 10.0 ** (m.path_gain_db / 10.0)
        if Label(lab) is Label.SP:
            sp[m.orientation_index] += p
            n_sp[m.orientation_index] += 1
        else:
            ds[m.orientation_index] += p
    sp_db = np.where(n_sp > 0, _db(np.where(sp > 0, sp, 1.0)), np.nan)
    samples = [CalibSample(o, float(a), float(b)) for o, a, b in zip(orientations, sp_db, _db(ds))]
    return CalibDataset(samples, campaign, Polarization(pol), n_facets)


def classify_campaign(mpcs, orientations, campaign: CampaignGeometry, cfg):
    """Run the SP/DS classifier orientation by orientation."""
    regions = specular_regions(campaign, orientations)
    labels = [None] * len(mpcs)
    by_orient: dict[int, list[int]] = {}
    for i, m in enumerate(mpcs):
        by_orient.setdefault(m.orientation_index, []).append(i)
    for oi, idxs in by_orient.items():
        labs = classify_mpcs([mpcs[i] for i in idxs], regions[oi], cfg)
        for i, lab in zip(idxs, labs):
            labels[i] = lab
    return labels
