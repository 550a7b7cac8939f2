// geneo_cli: batch front end for the GEO/GENEO library and the dice experiment.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "geneo/dice/dataset_io.hpp"
#include "geneo/dice/experiment.hpp"
#include "geneo/io.hpp"
#include "geneo/operator.hpp"
#include "geneo/representation.hpp"

using namespace geneo;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& kind, const std::string& message, int code = 2) {
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
    std::exit(code);
}

void require_readable(const std::string& path, const char* flag) {
    if (path.empty()) throw InvalidArgument(std::string(flag) + " is required");
    if (!std::filesystem::is_regular_file(path)) throw InvalidArgument(std::string(flag) + ": no such file " + path);
}

void require_writable(const std::string& path, const char* flag) {
    if (path.empty()) return;
    const auto parent = std::filesystem::absolute(path).parent_path();
    if (!std::filesystem::is_directory(parent))
        throw InvalidArgument(std::string(flag) + ": directory does not exist " + parent.string());
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json witness_json(const EquivarianceWitness& w) {
    return {{"generator", io::permutation_to_json(w.g)}, {"row", w.row}, {"col", w.col}, {"deviation", w.deviation}};
}

json certificate_json(const GeneoCertificate& c) {
    const auto& r = c.representation;
    return {{"reconstruction_gap", r.reconstruction_gap},
            {"norm_identity_gap", r.norm_identity_gap},
            {"total_variation", r.measure.total_variation()},
            {"orbits_used", r.orbit_count_used},
            {"is_geneo", c.is_geneo}};
}

struct Flags {
    std::string matrix, group, measure, out, dataset, emit_pca;
    double tol = kDefaultCertifyTol;
    std::uint64_t seed = 1;
    std::size_t n = 25;
    std::size_t count = 10000;
    std::vector<std::size_t> pcs{2};
    std::vector<double> weights{dice::kDefaultGeneoWeights.begin(), dice::kDefaultGeneoWeights.end()};
    std::vector<double> coeff_range{0.6, 1.0};
    bool no_geneo = false;
};

int cmd_check(const Flags& f) {
    require_readable(f.matrix, "--matrix");
    require_readable(f.group, "--group");
    const auto B = io::load_matrix(f.matrix);
    const auto G = io::load_group(f.group);
    const auto eq = is_equivariant(B, G, f.tol);
    json j{{"equivariant", eq.equivariant},
           {"nonexpansive", is_nonexpansive(B, f.tol)},
           {"inf_norm", operator_inf_norm(B)},
           {"transitive", is_transitive(G)}};
    if (eq.witness) j["witness"] = witness_json(*eq.witness);
    print(j);
    return eq.equivariant ? 0 : 1;
}

int cmd_decompose(const Flags& f) {
    require_readable(f.matrix, "--matrix");
    require_readable(f.group, "--group");
    require_writable(f.out, "--out");
    const auto B = io::load_matrix(f.matrix);
    const auto G = io::load_group(f.group);
    RepresentationTolerances tol;
    tol.equivariance = f.tol;
    const auto cert = certify_geneo(B, G, tol);
    const json measure = io::measure_to_json(cert.representation.measure);
    if (!f.out.empty()) io::write_file(f.out, measure.dump(2) + "\n");
    print({{"certificate", certificate_json(cert)}, {"measure", measure}});
    return 0;
}

int cmd_dim_pm(const Flags& f) {
    require_readable(f.group, "--group");
    std::cout << dim_pm(io::load_group(f.group)) << '\n';
    return 0;
}

int cmd_from_measure(const Flags& f) {
    require_readable(f.measure, "--measure");
    require_writable(f.out, "--out");
    const auto m = io::load_measure(f.measure);
    const auto B = matrix_of_measure(m);
    json j{{"degree", m.degree()}, {"total_variation", m.total_variation()}, {"inf_norm", operator_inf_norm(B)}};
    if (!f.group.empty()) {
        require_readable(f.group, "--group");
        const auto G = io::load_group(f.group);
        j["permutant_measure"] = is_permutant_measure(m, G);
        j["equivariant"] = is_equivariant(B, G, f.tol).equivariant;
    }
    if (f.out.empty())
        std::cout << io::matrix_to_csv(B);
    else
        io::write_file(f.out, io::matrix_to_csv(B));
    std::cerr << j.dump() << '\n';
    return 0;
}

dice::ExperimentConfig experiment_config(const Flags& f) {
    dice::ExperimentConfig c;
    c.n = f.n;
    c.count = f.count;
    c.seed = f.seed;
    if (f.weights.size() != 3) throw InvalidArgument("--weights needs three values");
    c.weights = {f.weights[0], f.weights[1], f.weights[2]};
    if (f.coeff_range.size() != 2) throw InvalidArgument("--coeff-range needs two values");
    c.coeff_lo = f.coeff_range[0];
    c.coeff_hi = f.coeff_range[1];
    c.pcs = f.pcs;
    c.with_geneo = !f.no_geneo;
    dice::validate(c);
    return c;
}

int cmd_dice_generate(const Flags& f) {
    if (f.out.empty()) throw InvalidArgument("--out is required");
    require_writable(f.out, "--out");
    const auto c = experiment_config(f);
    dice::DieOptions opts;
    opts.coeff_lo = c.coeff_lo;
    opts.coeff_hi = c.coeff_hi;
    const dice::DieGenerator gen(c.n, opts);
    dice::Dataset ds;
    ds.n = static_cast<std::uint32_t>(c.n);
    ds.samples = dice::generate_dataset(c.count, c.seed, gen);
    dice::save_dataset(f.out, ds);
    print({{"out", f.out}, {"n", c.n}, {"count", c.count}, {"seed", c.seed}, {"surface_len", gen.lattice().surface_len()}});
    return 0;
}

int cmd_dice_run(const Flags& f) {
    require_writable(f.out, "--out");
    require_writable(f.emit_pca, "--emit-pca");
    auto c = experiment_config(f);
    std::optional<dice::Dataset> ds;
    if (!f.dataset.empty()) {
        require_readable(f.dataset, "--dataset");
        ds = dice::load_dataset(f.dataset);
        c.n = ds->n;
        c.count = ds->samples.size();
    }
    const auto report = dice::run_experiment(c, ds ? &*ds : nullptr);
    const auto j = dice::report_to_json(report);
    if (!f.out.empty()) io::write_file(f.out, j.dump(2) + "\n");
    if (!f.emit_pca.empty()) io::write_file(f.emit_pca, dice::projections_csv(report));
    print(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group equivariant operators: checks, decompositions and the dice experiment"};
    app.require_subcommand(1);
    Flags f;

    auto* check = app.add_subcommand("check", "equivariance, nonexpansiveness and norm of a matrix under a group");
    check->add_option("--matrix", f.matrix, "CSV matrix")->required();
    check->add_option("--group", f.group, "group JSON")->required();
    check->add_option("--tol", f.tol, "absolute tolerance")->check(CLI::NonNegativeNumber);

    auto* decomp = app.add_subcommand("decompose", "permutant measure representing an equivariant matrix");
    decomp->add_option("--matrix", f.matrix, "CSV matrix")->required();
    decomp->add_option("--group", f.group, "group JSON, must be transitive")->required();
    decomp->add_option("--tol", f.tol, "equivariance tolerance")->check(CLI::NonNegativeNumber);
    decomp->add_option("--out", f.out, "write the measure JSON here");

    auto* dim = app.add_subcommand("dim-pm", "dimension of the space of permutant measures");
    dim->add_option("--group", f.group, "group JSON")->required();

    auto* from = app.add_subcommand("from-measure", "matrix of the operator induced by a measure (CSV)");
    from->add_option("--measure", f.measure, "measure JSON")->required();
    from->add_option("--group", f.group, "optional group JSON to check against");
    from->add_option("--tol", f.tol, "equivariance tolerance")->check(CLI::NonNegativeNumber);
    from->add_option("--out", f.out, "write the CSV here instead of stdout");

    auto dice_opts = [&](CLI::App* c) {
        c->add_option("--n", f.n, "lattice side")->check(CLI::Range(21, 201));
        c->add_option("--count", f.count, "number of dice, even")->check(CLI::Range(4, 10000000));
        c->add_option("--seed", f.seed, "dataset seed");
        c->add_option("--coeff-range", f.coeff_range, "dot intensity range lo,hi")->delimiter(',')->expected(2);
    };
    auto* gen = app.add_subcommand("dice-generate", "write a binary dice dataset");
    dice_opts(gen);
    gen->add_option("--out", f.out, "dataset path")->required();

    auto* run = app.add_subcommand("dice-run", "GENEO + PCA + quadratic classifier experiment");
    dice_opts(run);
    run->add_option("--dataset", f.dataset, "load dice from this file instead of generating");
    run->add_option("--pcs", f.pcs, "principal component counts, e.g. 1,2,3,4")
        ->delimiter(',')
        ->check(CLI::Range(1, 4));
    run->add_option("--weights", f.weights, "GENEO weights a,b,c")->delimiter(',')->expected(3);
    run->add_flag("--no-geneo", f.no_geneo, "skip the GENEO, run the baseline");
    run->add_option("--out", f.out, "write the report JSON here");
    run->add_option("--emit-pca", f.emit_pca, "write projected points as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fail("usage", e.what());
    }

    try {
        if (*check) return cmd_check(f);
        if (*decomp) return cmd_decompose(f);
        if (*dim) return cmd_dim_pm(f);
        if (*from) return cmd_from_measure(f);
        if (*gen) return cmd_dice_generate(f);
        if (*run) return cmd_dice_run(f);
    } catch (const NotEquivariant& e) {
        std::cerr << json{{"error", e.kind()},
                          {"message", e.what()},
                          {"witness", {{"generator", e.generator}, {"row", e.row}, {"col", e.col}, {"deviation", e.deviation}}}}
                         .dump()
                  << '\n';
        return 2;
    } catch (const Error& e) {
        fail(e.kind(), e.what());
    } catch (const std::exception& e) {
        fail("internal", e.what(), 3);
    }
    return 0;
}
