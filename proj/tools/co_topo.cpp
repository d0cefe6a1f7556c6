#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "cotopo/dataset.hpp"
#include "cotopo/pipeline.hpp"

using namespace cotopo;

namespace {

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("CO_TOPO_THREADS")) threads = std::atoi(env);
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

Layout parse_layout(const std::string& name) {
    if (name == "carbon24") return Layout::carbon24;
    if (name == "full72") return Layout::full72;
    throw CLI::ValidationError("--layout", "must be carbon24 or full72");
}

SyntheticKind parse_kind(const std::string& name) {
    if (name == "circle") return SyntheticKind::circle;
    if (name == "sphere2") return SyntheticKind::sphere2;
    if (name == "flat_torus") return SyntheticKind::flat_torus;
    if (name == "flat_klein_bottle") return SyntheticKind::flat_klein_bottle;
    if (name == "mobius_strip") return SyntheticKind::mobius_strip;
    throw CLI::ValidationError("--kind", "unknown synthetic kind: " + name);
}

struct PersistenceFlags {
    std::vector<int> primes{2, 3};
    int max_dim = 2;
    double r_max = 8.0;
    double betti_r = 4.0;
    double prominence = 2.0;
    std::size_t budget = kDefaultSimplexBudget;

    void attach(CLI::App* cmd) {
        cmd->add_option("--primes", primes, "field characteristics")->delimiter(',');
        cmd->add_option("--max-dim", max_dim, "top homology dimension");
        cmd->add_option("--r-max", r_max, "filtration cutoff");
        cmd->add_option("--betti-r", betti_r, "scale at which Betti numbers are reported");
        cmd->add_option("--prominence", prominence, "death/birth cutoff for long intervals");
        cmd->add_option("--budget", budget, "simplex budget");
    }

    void fill(PipelineConfig& cfg) const {
        cfg.primes = primes;
        cfg.max_dim = max_dim;
        cfg.r_max = r_max;
        cfg.betti_r = betti_r;
        cfg.prominence_ratio = prominence;
        cfg.budget = budget;
    }
};

void print_warnings(const Dataset& data) {
    for (const std::string& w : data.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology of the uniform 8-ring linkage configuration space"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (CO_TOPO_THREADS)");

    // ingest
    auto* cmd_ingest = app.add_subcommand("ingest", "validate a coordinate file");
    std::string in_file, layout_name = "carbon24", normalized_out;
    cmd_ingest->add_option("file", in_file, "input file")->required();
    cmd_ingest->add_option("--layout", layout_name, "carbon24 or full72");
    cmd_ingest->add_option("--out", normalized_out, "write the normalized carbon24 rows here");

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "random-walk sample of the variety");
    double phi_deg = 115.0, step = 0.2, min_sep = 0.0;
    std::size_t n = 2000;
    std::uint64_t seed = 0;
    std::string sample_out;
    cmd_sample->add_option("--phi-deg", phi_deg, "joint angle in degrees");
    cmd_sample->add_option("--n", n, "number of samples");
    cmd_sample->add_option("--seed", seed, "random seed");
    cmd_sample->add_option("--step", step, "walk step size");
    cmd_sample->add_option("--min-sep", min_sep, "greedy angular separation");
    cmd_sample->add_option("--out", sample_out, "output file (default stdout)");

    // run
    auto* cmd_run = app.add_subcommand("run", "full topology pipeline on a dataset");
    std::string run_file, run_layout = "carbon24", metric_name = "angular";
    std::string quotient_name = "none", subspace_name = "full", out_dir = "out";
    std::vector<int> type_set;
    PersistenceFlags run_flags;
    bool do_isomap = false;
    int knn = 12, embed_dim = 3;
    double eps = 0.0, circular_r = 0.0;
    int circular_prime = 47;
    cmd_run->add_option("--input", run_file, "coordinate file")->required();
    cmd_run->add_option("--layout", run_layout, "carbon24 or full72");
    cmd_run->add_option("--metric", metric_name, "angular or euclidean");
    cmd_run->add_option("--quotient", quotient_name, "none, C8 or D8");
    cmd_run->add_option("--subspace", subspace_name,
                        "full, A, B, C, AuB, AuC, BuC, M1, M2 or types");
    cmd_run->add_option("--types", type_set, "type ids for --subspace types")->delimiter(',');
    run_flags.attach(cmd_run);
    cmd_run->add_flag("--isomap", do_isomap, "compute the Isomap embedding");
    cmd_run->add_option("--knn", knn, "neighborhood size for Isomap");
    cmd_run->add_option("--eps", eps, "use an epsilon-ball neighborhood instead of knn");
    cmd_run->add_option("--embed-dim", embed_dim, "embedding dimension");
    cmd_run->add_option("--circular-r", circular_r, "scale for circular coordinates (0 = off)");
    cmd_run->add_option("--circular-prime", circular_prime, "cocycle field characteristic");
    cmd_run->add_option("--out-dir", out_dir, "output directory");

    // quotients
    auto* cmd_quot = app.add_subcommand("quotients", "Betti table of the quotient subspaces");
    std::string quot_file, quot_layout = "carbon24", base_name = "angular";
    PersistenceFlags quot_flags;
    cmd_quot->add_option("--input", quot_file, "coordinate file")->required();
    cmd_quot->add_option("--layout", quot_layout, "carbon24 or full72");
    cmd_quot->add_option("--base", base_name, "angular or euclidean");
    quot_flags.attach(cmd_quot);

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "persistence of a synthetic manifold sample");
    std::string kind_name = "circle", synth_out;
    std::size_t synth_n = 400;
    std::uint64_t synth_seed = 0;
    double noise = 0.0;
    PersistenceFlags synth_flags;
    synth_flags.r_max = 2.0;
    synth_flags.betti_r = 0.5;
    cmd_synth->add_option("--kind", kind_name,
                          "circle, sphere2, flat_torus, flat_klein_bottle, mobius_strip");
    cmd_synth->add_option("--n", synth_n, "number of points");
    cmd_synth->add_option("--seed", synth_seed, "random seed");
    cmd_synth->add_option("--noise", noise, "noise level");
    synth_flags.attach(cmd_synth);
    cmd_synth->add_option("--out-dir", synth_out, "output directory (optional)");

    CLI11_PARSE(app, argc, argv);
    apply_threads(threads);

    try {
        if (*cmd_ingest) {
            Dataset data = ingest(in_file, parse_layout(layout_name));
            print_warnings(data);
            std::cout << "points = " << data.size() << "\n";
            std::cout << "bond_length = " << data.realizations.front().params.bond_length << "\n";
            std::cout << "bond_angle = " << data.realizations.front().params.bond_angle << "\n";
            if (!normalized_out.empty()) export_realizations(data, normalized_out);
        } else if (*cmd_sample) {
            LinkageParams params;
            params.bond_angle = phi_deg * M_PI / 180.0;
            SamplerConfig cfg;
            cfg.count = n;
            cfg.seed = seed;
            cfg.step_size = step;
            cfg.min_separation = min_sep;
            Dataset data = dataset_from_samples(sample_variety(params, cfg), "sample");
            if (sample_out.empty())
                export_realizations(data, std::cout);
            else
                export_realizations(data, sample_out);
            std::cerr << "sampled " << data.size() << " points\n";
        } else if (*cmd_run) {
            Dataset data = ingest(run_file, parse_layout(run_layout));
            print_warnings(data);
            PipelineConfig cfg;
            run_flags.fill(cfg);
            cfg.metric.base =
                metric_name == "euclidean" ? MetricBase::euclidean : MetricBase::angular;
            cfg.metric.quotient = quotient_name == "C8"   ? QuotientGroup::C8
                                  : quotient_name == "D8" ? QuotientGroup::D8
                                                          : QuotientGroup::none;
            cfg.subspace.name = subspace_name;
            cfg.subspace.types.insert(type_set.begin(), type_set.end());
            cfg.isomap_enabled = do_isomap;
            cfg.neighbor_rule = eps > 0.0 ? NeighborRule::ball(eps) : NeighborRule::knn(knn);
            cfg.embed_dim = embed_dim;
            cfg.circular_enabled = circular_r > 0.0;
            cfg.circular_r = circular_r;
            cfg.circular_prime = circular_prime;
            RunResult res = run(cfg, data);
            write_outputs(res, out_dir);
            std::cout << res.summary_text();
        } else if (*cmd_quot) {
            Dataset data = ingest(quot_file, parse_layout(quot_layout));
            print_warnings(data);
            PipelineConfig cfg;
            quot_flags.fill(cfg);
            MetricBase base =
                base_name == "euclidean" ? MetricBase::euclidean : MetricBase::angular;
            std::cout << compare_quotients(data, base, cfg).text();
        } else if (*cmd_synth) {
            SyntheticSpec spec;
            spec.kind = parse_kind(kind_name);
            spec.count = synth_n;
            spec.seed = synth_seed;
            spec.noise = noise;
            PipelineConfig cfg;
            synth_flags.fill(cfg);
            RunResult res = run(cfg, synthetic_dataset(spec));
            if (!synth_out.empty()) write_outputs(res, synth_out);
            std::cout << res.summary_text();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
