#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "geneo/dice/classifier.hpp"
#include "geneo/dice/dataset_io.hpp"
#include "geneo/dice/die.hpp"
#include "geneo/dice/geneo_operator.hpp"
#include "geneo/dice/pca.hpp"
#include "geneo/error.hpp"

namespace geneo::dice {

struct ExperimentConfig {
    std::size_t n = 25;
    std::size_t count = 10000;
    std::uint64_t seed = 1;
    GeneoWeights weights = kDefaultGeneoWeights;
    std::vector<std::size_t> pcs{2};  // one classifier per entry; PCA is fitted once
    double coeff_lo = 0.6;
    double coeff_hi = 1.0;
    bool with_geneo = true;
    double train_fraction = 0.7;
    ClassifierOptions classifier{};
    PcaOptions pca{};
    unsigned workers = 0;  // 0: worker_count()
};

struct SplitResult {
    ConfusionMatrix confusion{};
    double accuracy = 0;
};

struct PcRun {
    std::size_t pcs = 0;
    SplitResult train;
    SplitResult test;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<PcRun> runs;
    Eigen::VectorXd explained_variance;
    int pca_iterations = 0;
    std::size_t surface_len = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    Eigen::MatrixXd projections;  // count x max(pcs)
    std::vector<int> labels;

    const PcRun& run(std::size_t pcs) const {
        for (const auto& r : runs)
            if (r.pcs == pcs) return r;
        throw InvalidArgument("no run with " + std::to_string(pcs) + " components");
    }
};

/// Per class, a seeded shuffle puts the first round(fraction * size) indices
/// in the training split. Both index lists come back sorted.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(std::span<const int> labels,
                                                                                    double fraction,
                                                                                    std::uint64_t seed) {
    if (!(fraction > 0 && fraction < 1)) throw InvalidArgument("train fraction must lie in (0, 1)");
    std::vector<std::size_t> train, test;
    Rng rng(seed);
    for (int cls : {1, 2}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) idx.push_back(i);
        rng.shuffle(std::span(idx));
        const auto cut = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(idx.size())));
        train.insert(train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut));
        test.insert(test.end(), idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {train, test};
}

/// Rows are dice, optionally passed through the GENEO first.
inline Eigen::MatrixXd feature_matrix(const std::vector<DieSample>& samples, const SurfaceOperator* geneo,
                                      unsigned workers) {
    if (samples.empty()) throw InvalidArgument("empty dataset");
    const std::size_t len = samples.front().surface_values.size();
    for (const auto& s : samples)
        if (s.surface_values.size() != len) throw InvalidArgument("samples have different lengths");
    Eigen::MatrixXd X(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(len));
    auto work = [&](std::size_t start, std::size_t stride) {
        std::vector<double> row(len);
        for (std::size_t i = start; i < samples.size(); i += stride) {
            const auto& v = samples[i].surface_values;
            if (geneo)
                geneo->apply<float, double>(v, row);
            else
                std::copy(v.begin(), v.end(), row.begin());
            for (std::size_t j = 0; j < len; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(samples.size())));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }
    return X;
}

inline void validate(const ExperimentConfig& c) {
    if (c.n < 21) throw InvalidArgument("n must be at least 21");
    if (c.count < 4 || c.count % 2 != 0) throw InvalidArgument("count must be even and at least 4");
    if (c.pcs.empty()) throw InvalidArgument("at least one PC count is required");
    for (std::size_t k : c.pcs)
        if (k < 1 || k > 4) throw InvalidArgument("PC counts must lie in 1..4");
    if (!(0 <= c.coeff_lo && c.coeff_lo <= c.coeff_hi && c.coeff_hi <= 1))
        throw InvalidArgument("coefficient range must satisfy 0 <= lo <= hi <= 1");
}

/// Generates the dataset unless one is supplied, applies the GENEO when
/// enabled, fits PCA on all dice, splits 70/30 per class and trains one
/// classifier per requested PC count.
inline ExperimentReport run_experiment(const ExperimentConfig& config, const Dataset* supplied = nullptr) {
    validate(config);
    const unsigned workers = config.workers ? config.workers : worker_count();

    Dataset generated;
    const Dataset* data = supplied;
    if (!data) {
        DieOptions opts;
        opts.coeff_lo = config.coeff_lo;
        opts.coeff_hi = config.coeff_hi;
        const DieGenerator gen(config.n, opts);
        generated.n = static_cast<std::uint32_t>(config.n);
        generated.samples = generate_dataset(config.count, config.seed, gen, workers);
        data = &generated;
    }
    if (data->n != config.n) throw InvalidArgument("dataset lattice size does not match the configuration");

    ExperimentReport rep;
    rep.config = config;
    rep.config.count = data->samples.size();
    for (const auto& s : data->samples) rep.labels.push_back(s.label);

    std::optional<SurfaceOperator> geneo;
    if (config.with_geneo) geneo.emplace(build_geneo(CubeLattice(config.n), config.weights));
    const Eigen::MatrixXd X = feature_matrix(data->samples, geneo ? &*geneo : nullptr, workers);
    rep.surface_len = static_cast<std::size_t>(X.cols());

    const std::size_t kmax = *std::max_element(config.pcs.begin(), config.pcs.end());
    const PcaModel pca = pca_fit(X, kmax, config.pca);
    rep.explained_variance = pca.explained_variance;
    rep.pca_iterations = pca.iterations;
    rep.projections = pca.project(X);

    const auto [train, test] = stratified_split(rep.labels, config.train_fraction, config.seed ^ 0x5a17ULL);
    rep.train_size = train.size();
    rep.test_size = test.size();

    auto rows = [&](const std::vector<std::size_t>& idx, std::size_t k) {
        Eigen::MatrixXd Z(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(k));
        for (std::size_t r = 0; r < idx.size(); ++r)
            Z.row(static_cast<Eigen::Index>(r)) =
                rep.projections.row(static_cast<Eigen::Index>(idx[r])).head(static_cast<Eigen::Index>(k));
        return Z;
    };
    auto labels_of = [&](const std::vector<std::size_t>& idx) {
        std::vector<int> y;
        for (std::size_t i : idx) y.push_back(rep.labels[i]);
        return y;
    };
    const std::vector<int> ytrain = labels_of(train), ytest = labels_of(test);

    for (std::size_t k : config.pcs) {
        const Eigen::MatrixXd Ztr = rows(train, k), Zte = rows(test, k);
        const auto clf = QuadraticClassifier::train(Ztr, ytrain, config.classifier);
        PcRun run;
        run.pcs = k;
        run.train.confusion = confusion(ytrain, clf.predict(Ztr));
        run.train.accuracy = accuracy(run.train.confusion);
        run.test.confusion = confusion(ytest, clf.predict(Zte));
        run.test.accuracy = accuracy(run.test.confusion);
        rep.runs.push_back(run);
    }
    return rep;
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
    using nlohmann::json;
    const auto& c = r.config;
    auto cm = [](const ConfusionMatrix& m) { return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})}); };
    json runs = json::array();
    for (const auto& run : r.runs)
        runs.push_back({{"pcs", run.pcs},
                        {"train", {{"confusion", cm(run.train.confusion)}, {"accuracy", run.train.accuracy}}},
                        {"test", {{"confusion", cm(run.test.confusion)}, {"accuracy", run.test.accuracy}}}});
    std::vector<double> ev(r.explained_variance.data(), r.explained_variance.data() + r.explained_variance.size());
    return {{"config",
             {{"n", c.n},
              {"count", c.count},
              {"seed", c.seed},
              {"weights", c.weights},
              {"pcs", c.pcs},
              {"coeff_range", {c.coeff_lo, c.coeff_hi}},
              {"with_geneo", c.with_geneo},
              {"train_fraction", c.train_fraction},
              {"lambda", c.classifier.lambda},
              {"epochs", c.classifier.epochs}}},
            {"surface_len", r.surface_len},
            {"train_size", r.train_size},
            {"test_size", r.test_size},
            {"pca", {{"explained_variance", ev}, {"iterations", r.pca_iterations}}},
            {"runs", runs},
            {"confusion_layout", "rows: actual class 1, 2; columns: predicted class 1, 2"}};
}

/// "pc1,...,pck,label", one line per die.
inline std::string projections_csv(const ExperimentReport& r) {
    std::string out;
    const auto k = r.projections.cols();
    for (Eigen::Index j = 0; j < k; ++j) out += "pc" + std::to_string(j + 1) + ",";
    out += "label\n";
    char buf[64];
    for (Eigen::Index i = 0; i < r.projections.rows(); ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            std::snprintf(buf, sizeof buf, "%.9g,", r.projections(i, j));
            out += buf;
        }
        out += std::to_string(r.labels[static_cast<std::size_t>(i)]) + "\n";
    }
    return out;
}

}  // namespace geneo::dice
