#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "modehunt/harness.hpp"
#include "modehunt/kolmsig.hpp"
#include "modehunt/persistence1d.hpp"
#include "modehunt/signal.hpp"
#include "modehunt/stats.hpp"
#include "modehunt/tautstring.hpp"

namespace py = pybind11;
using namespace modehunt;

namespace {

StepSignal signal_of(std::vector<double> values) { return StepSignal(std::move(values)); }

SignatureSequence sequence_of(std::vector<double> positives) { return SignatureSequence(std::move(positives)); }

NoiseKind noise_of(const std::string& family, double param, std::uint64_t seed) {
    if (family == "gaussian") return NoiseKind::gaussian(param, seed);
    if (family == "laplace") return NoiseKind::laplace(param, seed);
    if (family == "poisson") return NoiseKind::poisson(param, seed);
    if (family == "uniform") return NoiseKind::uniform(param, seed);
    throw std::invalid_argument("unknown noise family: " + family);
}

TestSignal test_signal_of(const std::string& name, double parameter, std::size_t cell) {
    if (name == "blocks") return TestSignal::blocks();
    if (name == "bumps") return TestSignal::bumps();
    if (name == "spike") return TestSignal::spike(parameter, cell);
    if (name == "plateau") return TestSignal::plateau(parameter);
    throw std::invalid_argument("unknown test signal: " + name);
}

py::dict event_dict(const MergeEvent& e) {
    py::dict d;
    d["alpha"] = e.alpha;
    d["breakpoint"] = e.breakpoint;
    d["left"] = std::string(to_string(e.left));
    d["right"] = std::string(to_string(e.right));
    d["emitted"] = e.emitted;
    d["maxima_after"] = e.maxima_after;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Mode hunting with Kolmogorov and persistence signatures";

    m.def(
        "kolmogorov_signatures",
        [](std::vector<double> v) { return kolmogorov_signatures(signal_of(std::move(v))).positives(); },
        py::arg("values"), "Positive Kolmogorov signatures s_0 >= s_1 >= ... of a step signal.");
    m.def(
        "persistence_signatures",
        [](std::vector<double> v) { return persistence_signatures(signal_of(std::move(v))).positives(); },
        py::arg("values"), "Positive sup-norm signatures (half persistences), sorted descending.");
    m.def(
        "persistence_pairs",
        [](std::vector<double> v) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : persistence_pairs(signal_of(std::move(v)))) out.emplace_back(p.birth, p.death);
            return out;
        },
        py::arg("values"), "Finite (birth, death) pairs of the sublevel filtration of -f.");
    m.def(
        "merge_trace",
        [](std::vector<double> v) {
            py::list out;
            for (const auto& e : merge_trace(signal_of(std::move(v)))) out.append(event_dict(e));
            return out;
        },
        py::arg("values"), "Every merge of the signature sweep in order.");
    m.def(
        "mode_count", [](std::vector<double> v) { return mode_count(signal_of(std::move(v))); }, py::arg("values"));
    m.def(
        "kolmogorov_distance",
        [](std::vector<double> f, std::vector<double> g) {
            return kolmogorov_distance(signal_of(std::move(f)), signal_of(std::move(g)));
        },
        py::arg("f"), py::arg("g"));
    m.def(
        "sup_distance",
        [](std::vector<double> f, std::vector<double> g) {
            return sup_distance(signal_of(std::move(f)), signal_of(std::move(g)));
        },
        py::arg("f"), py::arg("g"));

    m.def(
        "taut_string",
        [](std::vector<double> v, double alpha) {
            const auto ts = taut_string(signal_of(std::move(v)), alpha);
            std::vector<double> positions;
            for (std::size_t k = 0; k < ts.knots.size(); ++k) positions.push_back(ts.knot_position(k));
            return std::make_pair(positions, ts.values);
        },
        py::arg("values"), py::arg("alpha"), "Knot positions and heights of the taut string of radius alpha.");
    m.def(
        "taut_derivative",
        [](std::vector<double> v, double alpha) {
            const auto d = taut_derivative(signal_of(std::move(v)), alpha);
            return std::vector<double>(d.values().begin(), d.values().end());
        },
        py::arg("values"), py::arg("alpha"));
    m.def(
        "signature_oracle",
        [](std::vector<double> v, std::size_t k, double tol) { return signature_oracle(signal_of(std::move(v)), k, tol); },
        py::arg("values"), py::arg("k"), py::arg("tol") = 1e-10, "s_k by bisection on the taut-string mode count.");

    m.def(
        "tau", [](std::size_t n, double alpha, double kappa, double v) { return tau(n, alpha, MomentModel(kappa, v)); },
        py::arg("n"), py::arg("alpha"), py::arg("kappa"), py::arg("v"));
    m.def(
        "tau_gauss", [](std::size_t n, double alpha, double sigma) { return tau_gauss(n, alpha, GaussianModel(sigma)); },
        py::arg("n"), py::arg("alpha"), py::arg("sigma"));
    m.def(
        "deviation_bound",
        [](double delta, std::size_t n, double kappa, double v) {
            return deviation_bound(delta, n, MomentModel(kappa, v));
        },
        py::arg("delta"), py::arg("n"), py::arg("kappa"), py::arg("v"));
    m.def(
        "detection_bound",
        [](double epsilon, std::size_t n, double kappa, double v) {
            return detection_bound(epsilon, n, MomentModel(kappa, v));
        },
        py::arg("epsilon"), py::arg("n"), py::arg("kappa"), py::arg("v"));
    m.def(
        "mode_estimate",
        [](std::vector<double> s, double epsilon) { return mode_estimate(sequence_of(std::move(s)), epsilon); },
        py::arg("signatures"), py::arg("epsilon"));
    m.def(
        "mode_ci",
        [](std::vector<double> s, double epsilon, double tau) {
            const auto ci = mode_ci(sequence_of(std::move(s)), epsilon, tau);
            return std::make_pair(ci.lower, ci.upper);
        },
        py::arg("signatures"), py::arg("epsilon"), py::arg("tau"),
        "Interval (lower, upper) for k_eps(f); upper is None when unbounded.");
    m.def(
        "confidence_band",
        [](std::vector<double> s, double tau) {
            const auto band = confidence_band(sequence_of(std::move(s)), tau);
            std::vector<std::pair<double, double>> bands;
            for (const auto& b : band.bands) bands.emplace_back(b.lower, b.upper);
            return std::make_pair(bands, std::make_pair(band.tail.lower, band.tail.upper));
        },
        py::arg("signatures"), py::arg("tau"), "Per-signature bands and the band of the zero tail.");
    m.def(
        "gevl_constants",
        [](std::size_t n) {
            const auto g = gevl_constants(n);
            return std::make_pair(g.a, g.b);
        },
        py::arg("n"));
    m.def(
        "monotone_sup_fit", [](std::vector<double> x) { return monotone_sup_fit(x); }, py::arg("x"));

    m.def(
        "generate_signal",
        [](const std::string& name, std::size_t n, double parameter, std::size_t cell) {
            const auto f = generate_signal(test_signal_of(name, parameter, cell), n);
            return std::vector<double>(f.values().begin(), f.values().end());
        },
        py::arg("name"), py::arg("n"), py::arg("parameter") = 0.0, py::arg("cell") = 0,
        "blocks, bumps, spike (parameter = excess, cell) or plateau (parameter = height) on n cells.");
    m.def(
        "observe",
        [](std::vector<double> f, const std::string& family, double param, std::uint64_t seed,
           std::uint64_t replication) {
            const auto y = observe(signal_of(std::move(f)), noise_of(family, param, seed), replication);
            return std::vector<double>(y.values().begin(), y.values().end());
        },
        py::arg("values"), py::arg("family") = "gaussian", py::arg("param") = 1.0, py::arg("seed") = 0,
        py::arg("replication") = 0, "Adds deterministic counter-based noise to a signal.");
    m.def(
        "delta_ratio",
        [](std::vector<double> y, std::size_t k) { return delta_ratio(signal_of(std::move(y)), k); }, py::arg("values"),
        py::arg("k"));
}
