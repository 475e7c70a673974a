#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dimred/lieb_liniger.hpp"
#include "dimred/oracle3d.hpp"
#include "dimred/potential.hpp"
#include "dimred/reduction.hpp"
#include "dimred/relative_1d.hpp"
#include "dimred/scattering.hpp"
#include "dimred/transverse.hpp"

namespace py = pybind11;
using namespace dimred;

PYBIND11_MODULE(_core, m) {
  m.doc() = "quasi-1D reduction toolkit: scattering, transverse modes, "
            "Lieb-Liniger spectra, bound chains and the two-body oracle";

  py::enum_<PotentialKind>(m, "PotentialKind")
      .value("hard_core", PotentialKind::HardCore)
      .value("square_barrier", PotentialKind::SquareBarrier)
      .value("tabulated_radial", PotentialKind::TabulatedRadial);

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init<>())
      .def_readwrite("kind", &PotentialSpec::kind)
      .def_readwrite("range_R0", &PotentialSpec::range_R0)
      .def_readwrite("strength_v0", &PotentialSpec::strength_v0)
      .def_readwrite("table_t", &PotentialSpec::table_t)
      .def_readwrite("table_v", &PotentialSpec::table_v)
      .def_static("hard_core", &PotentialSpec::hard_core, py::arg("R0"))
      .def_static("square_barrier", &PotentialSpec::square_barrier,
                  py::arg("v0"), py::arg("R0"))
      .def_static("tabulated", &PotentialSpec::tabulated, py::arg("t"),
                  py::arg("v"))
      .def("value", &PotentialSpec::value)
      .def("validate", &PotentialSpec::validate);

  py::class_<ScatteringSolution>(m, "ScatteringSolution")
      .def_readonly("scattering_length", &ScatteringSolution::scattering_length)
      .def_readonly("grid", &ScatteringSolution::grid)
      .def_readonly("f0", &ScatteringSolution::f0)
      .def_readonly("f0_prime", &ScatteringSolution::f0_prime)
      .def_readonly("residual", &ScatteringSolution::residual)
      .def("core_radius", &ScatteringSolution::core_radius)
      .def("f0_at", &ScatteringSolution::f0_at)
      .def("f0_prime_at", &ScatteringSolution::f0_prime_at);

  m.def("solve_zero_energy",
        [](const PotentialSpec& spec, double a) {
          return solve_zero_energy(spec, a);
        },
        py::arg("spec"), py::arg("a") = 1.0);
  m.def("calibrate_unit_scattering_length", &calibrate_unit_scattering_length);

  py::class_<JastrowCutoff>(m, "JastrowCutoff")
      .def_readonly("R", &JastrowCutoff::R)
      .def("value", &JastrowCutoff::value)
      .def("deriv", &JastrowCutoff::deriv);
  m.def("build_jastrow", &build_jastrow, py::arg("solution"), py::arg("R"));

  py::class_<KernelPair>(m, "KernelPair")
      .def_readonly("z", &KernelPair::z)
      .def_readonly("h", &KernelPair::h)
      .def_readonly("m", &KernelPair::m)
      .def_readonly("integral_h", &KernelPair::integral_h)
      .def_readonly("integral_m", &KernelPair::integral_m)
      .def_readonly("sup_m", &KernelPair::sup_m);
  m.def("kernels", [](const JastrowCutoff& f) { return kernels(f); });

  py::enum_<TransverseKind>(m, "TransverseKind")
      .value("harmonic", TransverseKind::Harmonic)
      .value("tabulated_radial", TransverseKind::TabulatedRadial);

  py::class_<TransversePotential>(m, "TransversePotential")
      .def(py::init<>())
      .def_readwrite("kind", &TransversePotential::kind)
      .def_readwrite("rho", &TransversePotential::rho)
      .def_readwrite("V", &TransversePotential::V);

  py::class_<TransverseMode>(m, "TransverseMode")
      .def_readonly("e_perp", &TransverseMode::e_perp)
      .def_readonly("gap", &TransverseMode::gap)
      .def_readonly("gap_sector", &TransverseMode::gap_sector)
      .def_readonly("rho", &TransverseMode::rho)
      .def_readonly("b", &TransverseMode::b)
      .def_readonly("norm4_4", &TransverseMode::norm4_4)
      .def_readonly("sup_b", &TransverseMode::sup_b)
      .def_readonly("sup_grad_b2", &TransverseMode::sup_grad_b2)
      .def_readonly("rayleigh_defect", &TransverseMode::rayleigh_defect)
      .def("b_at", &TransverseMode::b_at);
  m.def("solve_transverse",
        [](const TransversePotential& pot) { return solve_transverse(pot); });

  py::class_<ScaledMode>(m, "ScaledMode")
      .def_readonly("r", &ScaledMode::r)
      .def_readonly("e_perp_over_r2", &ScaledMode::e_perp_over_r2)
      .def_readonly("gap_over_r2", &ScaledMode::gap_over_r2)
      .def_readonly("norm4_4_r", &ScaledMode::norm4_4_r)
      .def("b_r", &ScaledMode::b_r);
  m.def("scaled_mode", &scaled_mode, py::keep_alive<0, 1>());

  py::class_<BetheState>(m, "BetheState")
      .def_readonly("n", &BetheState::n)
      .def_readonly("ell", &BetheState::ell)
      .def_readonly("g", &BetheState::g)
      .def_readonly("quantum_numbers_2x", &BetheState::quantum_numbers_2x)
      .def_readonly("rapidities", &BetheState::rapidities)
      .def_readonly("energy", &BetheState::energy)
      .def_readonly("momentum", &BetheState::momentum)
      .def_readonly("newton_residual", &BetheState::newton_residual);
  m.def("bethe_solve", &bethe_solve, py::arg("n"), py::arg("ell"),
        py::arg("g"), py::arg("quantum_numbers_2x"));
  m.def("bethe_ground_numbers", &bethe_ground_numbers);

  py::enum_<TrapKind>(m, "TrapKind")
      .value("periodic", TrapKind::Periodic)
      .value("harmonic", TrapKind::Harmonic);

  py::class_<LLSpectrum>(m, "LLSpectrum")
      .def_readonly("n", &LLSpectrum::n)
      .def_readonly("ell", &LLSpectrum::ell)
      .def_readonly("g", &LLSpectrum::g)
      .def_readonly("trap", &LLSpectrum::trap)
      .def_readonly("energies", &LLSpectrum::energies)
      .def_readonly("momenta", &LLSpectrum::momenta)
      .def_readonly("delta_expectation", &LLSpectrum::delta_expectation)
      .def_readonly("basis_size", &LLSpectrum::basis_size)
      .def_readonly("window_ok", &LLSpectrum::window_ok)
      .def_readonly("conv_defect", &LLSpectrum::conv_defect);
  m.def("ll_spectrum_periodic", &ll_spectrum_periodic, py::arg("n"),
        py::arg("ell"), py::arg("g"), py::arg("k_max"));
  m.def("ll_spectrum_trapped", &ll_spectrum_trapped, py::arg("n"),
        py::arg("ell"), py::arg("g"), py::arg("basis_size"), py::arg("k_max"));

  py::class_<Branches>(m, "Branches")
      .def_readonly("p", &Branches::p)
      .def_readonly("eps_type_i", &Branches::eps_type_i)
      .def_readonly("eps_type_ii", &Branches::eps_type_ii);
  m.def("excitation_branches", &excitation_branches, py::arg("n"),
        py::arg("ell"), py::arg("g"));
  m.def("tg_levels", &tg_levels, py::arg("n"), py::arg("ell"),
        py::arg("k_max"));
  m.def("degeneracy_index",
        [](const std::vector<double>& e, double tol) {
          return degeneracy_index(e, tol);
        },
        py::arg("energies"), py::arg("tol") = 1e-8);
  m.def("ed_periodic_levels", &ed_periodic_levels, py::arg("n"),
        py::arg("ell"), py::arg("g"), py::arg("total_q"), py::arg("cutoff"),
        py::arg("k_max"));
  m.def("ed_periodic_extrapolated", &ed_periodic_extrapolated, py::arg("n"),
        py::arg("ell"), py::arg("g"), py::arg("total_q"), py::arg("k_index"),
        py::arg("cutoffs"));
  m.def("relative_1d_levels", &relative_1d_levels, py::arg("ell"),
        py::arg("g"), py::arg("k_max"));

  py::class_<GeometryParams>(m, "GeometryParams")
      .def(py::init([](int n, double r, double ell, double a) {
             GeometryParams g{n, r, ell, a};
             g.validate();
             return g;
           }),
           py::arg("n"), py::arg("r"), py::arg("ell"), py::arg("a"))
      .def_readwrite("n", &GeometryParams::n)
      .def_readwrite("r", &GeometryParams::r)
      .def_readwrite("ell", &GeometryParams::ell)
      .def_readwrite("a", &GeometryParams::a)
      .def("na_over_r", &GeometryParams::na_over_r);

  m.def("effective_g", &effective_g);
  m.def("eta_lower", &eta_lower);
  m.def("eta_upper", &eta_upper);

  py::class_<BoundEnvelope>(m, "BoundEnvelope")
      .def_readonly("g", &BoundEnvelope::g)
      .def_readonly("eta_L", &BoundEnvelope::eta_L)
      .def_readonly("eta_U", &BoundEnvelope::eta_U)
      .def_readonly("e1d", &BoundEnvelope::e1d)
      .def_readonly("lower", &BoundEnvelope::lower)
      .def_readonly("upper", &BoundEnvelope::upper)
      .def_readonly("valid_lower", &BoundEnvelope::valid_lower)
      .def_readonly("valid_upper", &BoundEnvelope::valid_upper);
  m.def("theorem1_envelope", &theorem1_envelope, py::arg("E1d"),
        py::arg("geom"), py::arg("mode"), py::arg("C"), py::arg("D"));

  py::class_<UpperChain>(m, "UpperChain")
      .def_readonly("R", &UpperChain::R)
      .def_readonly("K", &UpperChain::K)
      .def_readonly("factor", &UpperChain::factor)
      .def_readonly("norm_lower", &UpperChain::norm_lower)
      .def_readonly("induced_C", &UpperChain::induced_C)
      .def_readonly("vacuous", &UpperChain::vacuous)
      .def_readonly("vacuous_reason", &UpperChain::vacuous_reason);
  m.def("upper_chain_explicit", &upper_chain_explicit, py::arg("geom"),
        py::arg("mode"), py::arg("g"), py::arg("core_R0"),
        py::arg("R_override") = 0.0);

  py::class_<LowerChainParams>(m, "LowerChainParams")
      .def(py::init<>())
      .def_static("defaults", &LowerChainParams::defaults)
      .def_readwrite("R", &LowerChainParams::R)
      .def_readwrite("delta", &LowerChainParams::delta)
      .def_readwrite("eps", &LowerChainParams::eps)
      .def_readwrite("eta", &LowerChainParams::eta)
      .def_readwrite("kappa", &LowerChainParams::kappa)
      .def_readwrite("gamma", &LowerChainParams::gamma);

  py::class_<LowerChain>(m, "LowerChain")
      .def_readonly("g", &LowerChain::g)
      .def_readonly("g_prime", &LowerChain::g_prime)
      .def_readonly("g_dprime", &LowerChain::g_dprime)
      .def_readonly("kinetic_factor", &LowerChain::kinetic_factor)
      .def_readonly("effective_lower_factor",
                    &LowerChain::effective_lower_factor)
      .def_readonly("d_integral_lower", &LowerChain::d_integral_lower)
      .def_readonly("U_norm", &LowerChain::U_norm)
      .def_readonly("vacuous", &LowerChain::vacuous)
      .def_readonly("first_nonpositive", &LowerChain::first_nonpositive);
  m.def("lower_chain_explicit", &lower_chain_explicit, py::arg("geom"),
        py::arg("mode"), py::arg("params"), py::arg("spec"));

  m.def("lemma2_overlap", &lemma2_overlap, py::arg("energies"), py::arg("eta"),
        py::arg("l") = 0);

  py::class_<OverlapBound>(m, "OverlapBound")
      .def_readonly("k_lo", &OverlapBound::k_lo)
      .def_readonly("k_hi", &OverlapBound::k_hi)
      .def_readonly("value", &OverlapBound::value)
      .def_readonly("valid", &OverlapBound::valid)
      .def_readonly("invalid_reason", &OverlapBound::invalid_reason);
  m.def("theorem2_bound", &theorem2_bound, py::arg("E1d"),
        py::arg("group_starts"), py::arg("group_i"), py::arg("geom"),
        py::arg("mode"), py::arg("C"), py::arg("D"));

  py::class_<MeshPolicy>(m, "MeshPolicy")
      .def(py::init<>())
      .def_readwrite("core_points_per_a", &MeshPolicy::core_points_per_a)
      .def_readwrite("trans_points_per_scale",
                     &MeshPolicy::trans_points_per_scale)
      .def_readwrite("mid_points_per_r", &MeshPolicy::mid_points_per_r)
      .def_readwrite("far_points_per_scale", &MeshPolicy::far_points_per_scale)
      .def_readwrite("singular_grade", &MeshPolicy::singular_grade)
      .def("refined", &MeshPolicy::refined);

  py::class_<TwoBodyConfig>(m, "TwoBodyConfig")
      .def(py::init<>())
      .def_readwrite("geom", &TwoBodyConfig::geom)
      .def_readwrite("spec", &TwoBodyConfig::spec)
      .def_readwrite("mesh", &TwoBodyConfig::mesh)
      .def_readwrite("k_max", &TwoBodyConfig::k_max)
      .def_readwrite("n_rel_levels", &TwoBodyConfig::n_rel_levels)
      .def_readwrite("richardson", &TwoBodyConfig::richardson)
      .def("validate", &TwoBodyConfig::validate);

  py::class_<Spectrum3D>(m, "Spectrum3D")
      .def_readonly("total", &Spectrum3D::total)
      .def_readonly("excess", &Spectrum3D::excess)
      .def_readonly("com_index", &Spectrum3D::com_index)
      .def_readonly("rel_index", &Spectrum3D::rel_index)
      .def_readonly("overlap_group", &Spectrum3D::overlap_group)
      .def_readonly("e1d", &Spectrum3D::e1d)
      .def_readonly("e1d_groups", &Spectrum3D::e1d_groups)
      .def_readonly("grid_defect", &Spectrum3D::grid_defect)
      .def_readonly("window_ok", &Spectrum3D::window_ok)
      .def_readonly("g", &Spectrum3D::g);
  m.def("verify_two_body", &verify_two_body, py::arg("config"),
        py::arg("mode"));

  py::class_<ScalingCheckResult>(m, "ScalingCheckResult")
      .def_readonly("excess_base", &ScalingCheckResult::excess_base)
      .def_readonly("excess_scaled", &ScalingCheckResult::excess_scaled)
      .def_readonly("rel_diff", &ScalingCheckResult::rel_diff)
      .def_readonly("defect", &ScalingCheckResult::defect);
  m.def("scaling_check", &scaling_check, py::arg("config"), py::arg("mode"));

  m.attr("INFINITE_COUPLING") = kInfiniteCoupling;
  m.attr("__version__") = "0.1.0";
}
