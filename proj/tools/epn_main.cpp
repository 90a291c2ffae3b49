// Command-line front end: enumeration, builders, spectral analysis, metric
// computations and corridor sweeps with stable machine-readable output.

#include "epn/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace epn;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct MatrixOptions {
    std::string label;
    int n = 0; // 0: infer from the label
    std::string shift = "0";
    std::string t = "1";
    std::string backend = "auto";

    void attach(CLI::App* cmd) {
        cmd->add_option("--decomposition,-d", label, "component label, e.g. 4x2,3x2")
            ->required();
        cmd->add_option("--n", n, "matrix dimension (default: sum of component lengths)");
        cmd->add_option("--shift", shift, "energy shift eta (rational or decimal)");
        cmd->add_option("--t", t, "coupling t in [0, 1] (rational or decimal)");
        cmd->add_option("--backend", backend, "exact | float | auto")
            ->check(CLI::IsMember({"exact", "float", "auto"}));
    }

    int dim() const {
        if (n > 0) return n;
        int total = 0;
        std::string tok;
        std::stringstream ss(label);
        while (std::getline(ss, tok, ',')) total += std::stoi(tok);
        return total;
    }

    HamiltonianMatrix build() const {
        Decomposition dec = parse_decomposition_label(label, dim());
        auto eta = parse_rational(shift);
        auto tq = parse_rational(t);
        if (!eta) throw std::invalid_argument("unparseable --shift '" + shift + "'");
        if (!tq) throw std::invalid_argument("unparseable --t '" + t + "'");
        Backend be = backend == "exact"   ? Backend::Exact
                     : backend == "float" ? Backend::Float
                                          : Backend::Auto;
        return build_from_decomposition(dec, *eta, *tq, be);
    }

    Rational eta() const {
        auto v = parse_rational(shift);
        if (!v) throw std::invalid_argument("unparseable --shift '" + shift + "'");
        return *v;
    }
};

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << payload;
}

std::string matrix_text(const HamiltonianMatrix& h) {
    std::string out;
    if (h.is_exact()) {
        for (int i = 0; i < h.dim(); ++i) {
            for (int j = 0; j < h.dim(); ++j)
                out += (j ? " " : "") + h.exact()(i, j).str();
            out += "\n";
        }
        return out;
    }
    for (int i = 0; i < h.dim(); ++i) {
        for (int j = 0; j < h.dim(); ++j) out += (j ? " " : "") + fmt17(h(i, j));
        out += "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clustered non-Hermitian degeneracy toolkit"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    app.add_option("--format", format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output,-o", out_path, "write to file instead of stdout");

    // sequence
    auto* seq = app.add_subcommand("sequence", "scenario-count sequences a, b, c");
    std::string variant = "a";
    int max_n = 17;
    seq->add_option("--variant", variant, "a (all N), b (even N=2J), c (odd N=2J+1)")
        ->check(CLI::IsMember({"a", "b", "c"}));
    seq->add_option("--max-n", max_n, "largest index, inclusive");

    // decompose
    auto* dcp = app.add_subcommand("decompose", "enumerate decompositions of D(N)");
    int dec_n = 0;
    bool anomalous_only = false;
    dcp->add_option("--n", dec_n, "matrix dimension")->required();
    dcp->add_flag("--anomalous", anomalous_only, "drop the trivial K=1 entry");

    // table
    auto* tab = app.add_subcommand("table", "classification table of anomalous scenarios");
    int tab_max = 8;
    tab->add_option("--max-n", tab_max, "largest dimension, inclusive");

    // matrix-consuming subcommands
    auto* bld = app.add_subcommand("build", "emit a Hamiltonian matrix");
    auto* spc = app.add_subcommand("spectrum", "eigenvalues of a Hamiltonian");
    auto* jrd = app.add_subcommand("jordan", "Jordan structure at the degenerate eigenvalue");
    auto* qmx = app.add_subcommand("qmatrix", "transition matrix Q with HQ = QJ");
    auto* met = app.add_subcommand("metric", "metric operator from left eigenvectors");
    MatrixOptions mo_bld, mo_spc, mo_jrd, mo_qmx, mo_met;
    mo_bld.attach(bld);
    mo_spc.attach(spc);
    mo_jrd.attach(jrd);
    mo_qmx.attach(qmx);
    mo_met.attach(met);
    double kappa = 1.0;
    met->add_option("--kappa", kappa, "uniform spectral weight (positive)");

    // ep
    auto* ep = app.add_subcommand("ep", "bisect the reality boundary of a family");
    std::string ep_label = "4x2,3x2";
    std::string ep_shift = "7";
    double ep_scale = 1.0, ep_lo = 0.5, ep_hi = 1.2, ep_tol = 1e-6;
    ep->add_option("--decomposition,-d", ep_label, "component label of the family");
    ep->add_option("--shift", ep_shift, "energy shift eta");
    ep->add_option("--native-scale", ep_scale, "native coupling = scale * t");
    ep->add_option("--lo", ep_lo, "bracket start (t, real spectrum)");
    ep->add_option("--hi", ep_hi, "bracket end (t, complex spectrum)");
    ep->add_option("--tol", ep_tol, "bisection width in t");

    // sweep
    auto* swp = app.add_subcommand("sweep", "corridor sweep CSV over a t grid");
    std::string sw_label = "4x2,3x2";
    std::string sw_shift = "7";
    double sw_scale = 1.0, sw_from = 0.0, sw_to = 0.99, sw_kappa = 1.0;
    int sw_steps = 20;
    bool sw_serial = false;
    swp->add_option("--decomposition,-d", sw_label, "component label of the family");
    swp->add_option("--shift", sw_shift, "energy shift eta");
    swp->add_option("--native-scale", sw_scale, "native coupling = scale * t");
    swp->add_option("--from", sw_from, "first t");
    swp->add_option("--to", sw_to, "last t");
    swp->add_option("--steps", sw_steps, "number of grid points")->check(CLI::PositiveNumber);
    swp->add_option("--kappa", sw_kappa, "uniform spectral weight");
    swp->add_flag("--serial", sw_serial, "use the serial reference kernel");

    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        std::string payload;

        if (*seq) {
            auto rep = sequence_report(variant[0], max_n);
            if (format == "json") {
                json j;
                j["variant"] = std::string(1, rep.variant);
                json vals = json::array();
                for (const auto& [idx, v] : rep.values) vals.push_back({idx, v});
                j["values"] = std::move(vals);
                payload = j.dump(2) + "\n";
            } else {
                    const char* head = variant == "a" ? "N" : "J";
                if (format == "csv") payload = std::string(head) + ",count\n";
                for (const auto& [idx, v] : rep.values)
                    payload += std::to_string(idx) + (format == "csv" ? "," : " ") +
                               std::to_string(v) + "\n";
            }
        } else if (*dcp) {
            auto decs = enumerate_decompositions(dec_n, anomalous_only);
            if (format == "json") {
                json j = json::array();
                for (const auto& d : decs)
                    j.push_back({{"label", d.label()}, {"K", d.K()}, {"partition", d.partition()}});
                payload = j.dump(2) + "\n";
            } else {
                for (const auto& d : decs) payload += d.label() + "\n";
            }
        } else if (*tab) {
            auto rows = classification_table(tab_max);
            if (format == "json") {
                json j = json::array();
                for (const auto& r : rows)
                    j.push_back({{"N", r.n},
                                 {"K", r.k},
                                 {"partition", r.partition},
                                 {"j", r.j},
                                 {"n_j", r.nj},
                                 {"c_j", to_string(r.cj)},
                                 {"label", r.tao_label}});
                payload = j.dump(2) + "\n";
            } else if (format == "csv") {
                payload = classification_table_csv(rows);
            } else {
                payload = classification_table_text(rows);
            }
        } else if (*bld) {
            auto h = mo_bld.build();
            payload = format == "text" ? matrix_text(h) : matrix_to_json(h).dump(2) + "\n";
        } else if (*spc) {
            auto rep = eigen(mo_spc.build());
            if (format == "json") {
                payload = spectral_report_to_json(rep).dump(2) + "\n";
            } else {
                for (const auto& e : rep.eigenvalues)
                    payload += fmt17(e.real()) + (format == "csv" ? "," : " ") +
                               fmt17(e.imag()) + "\n";
            }
        } else if (*jrd) {
            auto h = mo_jrd.build();
            auto js = jordan_structure(h, mo_jrd.eta());
            if (format == "json") {
                payload = jordan_to_json(js).dump(2) + "\n";
            } else {
                payload = "eta " + fmt17(js.eta) + "\nK " + std::to_string(js.K) + "\nblocks";
                for (int b : js.block_sizes) payload += " " + std::to_string(b);
                payload += "\n";
            }
        } else if (*qmx) {
            auto h = mo_qmx.build();
            auto tm = transition_matrix(h, jordan_structure(h, mo_qmx.eta()));
            json j;
            j["residual"] = tm.residual;
            j["det_magnitude"] = tm.det_magnitude;
            j["jordan"] = jordan_to_json(tm.jordan);
            j["q"] = matrix_to_json(tm.exact_q ? HamiltonianMatrix(*tm.exact_q)
                                               : HamiltonianMatrix(tm.q));
            payload = j.dump(2) + "\n";
        } else if (*met) {
            auto m = metric_from_left_eigenvectors(mo_met.build(), kappa);
            auto [positive, min_eig] = is_positive_definite(m.theta);
            json j;
            j["residual"] = m.residual;
            j["positive_definite"] = positive;
            j["min_eigenvalue"] = min_eig;
            j["theta"] = matrix_to_json(HamiltonianMatrix(m.theta));
            payload = j.dump(2) + "\n";
        } else if (*ep) {
            auto eta = parse_rational(ep_shift);
            if (!eta) throw std::invalid_argument("unparseable --shift '" + ep_shift + "'");
            int n = 0;
            {
                std::string tok;
                std::stringstream ss(ep_label);
                while (std::getline(ss, tok, ',')) n += std::stoi(tok);
            }
            ModelFamily fam(parse_decomposition_label(ep_label, n), *eta, ep_scale);
            auto f = [&](double t) { return fam.matrix(t).dense(); };
            double t_ep = find_ep(f, ep_lo, ep_hi, ep_tol);
            if (format == "json") {
                json j;
                j["t"] = t_ep;
                j["native_coupling"] = t_ep * ep_scale;
                payload = j.dump(2) + "\n";
            } else {
                payload = "t " + fmt17(t_ep) + "\nnative_coupling " +
                          fmt17(t_ep * ep_scale) + "\n";
            }
        } else if (*swp) {
            auto eta = parse_rational(sw_shift);
            if (!eta) throw std::invalid_argument("unparseable --shift '" + sw_shift + "'");
            int n = 0;
            {
                std::string tok;
                std::stringstream ss(sw_label);
                while (std::getline(ss, tok, ',')) n += std::stoi(tok);
            }
            if (sw_from < 0 || sw_to >= 1.0 || sw_to < sw_from)
                throw std::invalid_argument("sweep grid must satisfy 0 <= from <= to < 1");
            ModelFamily fam(parse_decomposition_label(sw_label, n), *eta, sw_scale);
            std::vector<double> grid;
            for (int i = 0; i < sw_steps; ++i)
                grid.push_back(sw_steps == 1
                                   ? sw_from
                                   : sw_from + (sw_to - sw_from) * i / (sw_steps - 1));
            auto rows = corridor_sweep(fam, grid, sw_kappa, !sw_serial);
            payload = sweep_csv(rows, fam.dim());
        }

        emit(out_path, payload);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BackendError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return kExitComputation;
    }
}
