// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isac/beamforming.hpp"
#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "isac/harness.hpp"
#include "isac/log.hpp"
#include "isac/sensing.hpp"
#include "isac/system.hpp"

namespace py = pybind11;
using namespace isac;

namespace {

ReceiverType rx_type(const std::string& s) { return parse_receiver_type(s); }

ReflectCoeffs phases_of(const RVector& phases) { return ReflectCoeffs(phases); }

AoConfig ao_config(const std::string& type, int max_outer_iters, double rel_tol,
                   int n_randomizations, int max_v_resamples) {
  AoConfig ao;
  ao.receiver_type = rx_type(type);
  ao.max_outer_iters = max_outer_iters;
  ao.rel_tol = rel_tol;
  ao.n_randomizations = n_randomizations;
  ao.max_v_resamples = max_v_resamples;
  ao.validate();
  return ao;
}

TransmitDesign design_of(const std::vector<CVector>& w, const CMatrix& R0) {
  TransmitDesign d;
  d.w = w;
  d.R0 = R0;
  return d;
}

#define AO_ARGS                                                                     \
  py::arg("receiver_type") = "I", py::arg("max_outer_iters") = 30,                  \
      py::arg("rel_tol") = 1e-3, py::arg("n_randomizations") = 256,                 \
      py::arg("max_v_resamples") = 50

using Benchmark = AoSolution (*)(const ChannelSet&, const SystemParams&, const AoConfig&,
                                 std::uint64_t);

auto wrap(Benchmark fn) {
  return [fn](const ChannelSet& ch, const SystemParams& p, std::uint64_t seed,
              const std::string& type, int iters, double tol, int nrand, int nres) {
    const AoConfig ao = ao_config(type, iters, tol, nrand, nres);
    py::gil_scoped_release release;
    return fn(ch, p, ao, seed);
  };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "IRS-assisted multiuser ISAC: channels, CRB and beamforming";
  init_logging();

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<ChannelSet>(m, "ChannelSet")
      .def_readonly("G", &ChannelSet::G)
      .def_readonly("h_d", &ChannelSet::h_d)
      .def_readonly("h_r", &ChannelSet::h_r)
      .def_readonly("sigma_k2", &ChannelSet::sigma_k2)
      .def_readonly("sigma_r2", &ChannelSet::sigma_r2)
      .def_property_readonly("M", &ChannelSet::M)
      .def_property_readonly("N", &ChannelSet::N)
      .def_property_readonly("K", &ChannelSet::K)
      .def("digest", [](const ChannelSet& ch) { return digest(ch); });

  m.def(
      "gen_channels",
      [](std::uint64_t seed, int M, int N, int K) {
        Geometry g;
        if (K > static_cast<int>(g.cus.size()))
          throw ValidationError("gen_channels: default geometry has 3 users");
        g.cus.resize(K);
        return gen_channels(g, {}, {M, N, K}, {}, seed);
      },
      py::arg("seed"), py::arg("M") = 8, py::arg("N") = 8, py::arg("K") = 3,
      "Channels for the default geometry (first K users).");

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init(&SystemParams::from_db), py::arg("power_dbm") = 30.0,
           py::arg("gamma_db") = 10.0, py::arg("K") = 3, py::arg("T") = 256)
      .def_readwrite("P0", &SystemParams::P0)
      .def_readwrite("gamma", &SystemParams::gamma)
      .def_readwrite("T", &SystemParams::T);

  m.def(
      "combined_channel",
      [](const ChannelSet& ch, const RVector& phases) {
        return combined_channel(ch, phases_of(phases));
      },
      py::arg("channels"), py::arg("phases"));
  m.def(
      "sinr",
      [](const std::vector<CVector>& w, const CMatrix& R0, const std::vector<CVector>& h,
         const RVector& sigma_k2, const std::string& type) {
        return sinr(design_of(w, R0), h, sigma_k2, rx_type(type));
      },
      py::arg("w"), py::arg("R0"), py::arg("h"), py::arg("sigma_k2"),
      py::arg("receiver_type") = "I");
  m.def("crb", &crb, py::arg("G"), py::arg("rx"), py::arg("sigma_r2"), py::arg("T"));
  m.def("sensing_only_bound", &sensing_only_bound, py::arg("G"), py::arg("P0"));

  py::class_<TransmitResult>(m, "TransmitResult")
      .def_readonly("feasible", &TransmitResult::feasible)
      .def_readonly("objective", &TransmitResult::objective)
      .def_property_readonly("w", [](const TransmitResult& r) { return r.design.w; })
      .def_property_readonly("R0", [](const TransmitResult& r) { return r.design.R0; })
      .def_readonly("W_relaxed", &TransmitResult::W_relaxed)
      .def_readonly("R0_relaxed", &TransmitResult::R0_relaxed);

  m.def(
      "transmit_step",
      [](const ChannelSet& ch, const RVector& phases, const SystemParams& p,
         const std::string& type) {
        const auto t = rx_type(type);
        py::gil_scoped_release release;
        return transmit_step(ch, phases_of(phases), p, t);
      },
      py::arg("channels"), py::arg("phases"), py::arg("params"),
      py::arg("receiver_type") = "I");

  py::class_<AoSolution>(m, "AoSolution")
      .def_property_readonly("w", [](const AoSolution& s) { return s.design.w; })
      .def_property_readonly("R0", [](const AoSolution& s) { return s.design.R0; })
      .def_property_readonly("phases", [](const AoSolution& s) { return s.v.phases(); })
      .def_readonly("crb_trace", &AoSolution::crb_trace)
      .def_property_readonly("status", [](const AoSolution& s) { return to_string(s.status); })
      .def_readonly("outer_iters", &AoSolution::outer_iters)
      .def_property_readonly("crb", &AoSolution::final_crb);

  m.def("alternating_optimize", wrap(&alternating_optimize), py::arg("channels"),
        py::arg("params"), py::arg("seed"), AO_ARGS);
  m.def("benchmark_transmit_only", wrap(&benchmark_transmit_only), py::arg("channels"),
        py::arg("params"), py::arg("seed"), AO_ARGS);
  m.def("benchmark_separate", wrap(&benchmark_separate), py::arg("channels"),
        py::arg("params"), py::arg("seed"), AO_ARGS);

  m.def(
      "random_target",
      [](int N, std::uint64_t seed, bool symmetric) {
        return random_target(N, seed, symmetric).H;
      },
      py::arg("N"), py::arg("seed"), py::arg("symmetric") = false);
  m.def(
      "empirical_mse",
      [](const ChannelSet& ch, const RVector& phases, const std::vector<CVector>& w,
         const CMatrix& R0, const CMatrix& H, int T, int n_trials, std::uint64_t seed) {
        TargetResponse target;
        target.H = H;
        py::gil_scoped_release release;
        const auto r = empirical_mse(ch, phases_of(phases), design_of(w, R0), target, T,
                                     n_trials, seed);
        return std::make_pair(r.mse, r.crb_at_sample_cov);
      },
      py::arg("channels"), py::arg("phases"), py::arg("w"), py::arg("R0"), py::arg("H"),
      py::arg("T"), py::arg("n_trials"), py::arg("seed"),
      "Returns (empirical MSE, CRB at the sample covariance).");

  m.def(
      "validate_config",
      [](const std::string& text) { return serialize_config(parse_config(text)); },
      py::arg("config_json"), "Canonical form of a JSON experiment config.");
  m.def(
      "run_sweep",
      [](const std::string& text, int jobs) {
        const auto cfg = parse_config(text);
        py::gil_scoped_release release;
        return records_to_csv(run_sweep(cfg, {jobs, false}));
      },
      py::arg("config_json"), py::arg("jobs") = 1, "Runs a sweep and returns the CSV.");
  m.def(
      "summarize",
      [](const std::string& csv) { return summary_to_json(summarize(records_from_csv(csv))); },
      py::arg("csv"), "Per-cell aggregates of a sweep CSV, as JSON.");
}
