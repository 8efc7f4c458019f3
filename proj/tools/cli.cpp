#include "cli.hpp"

#include <wtopo/errors.hpp>
#include <wtopo/format.hpp>
#include <wtopo/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace wtopo::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to `path` through a temporary sibling and a rename; "-" or empty means `fallback`.
void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << content;
        return;
    }
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw Error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

template <typename Fn>
std::string render(Fn&& fn) {
    std::ostringstream ss;
    fn(ss);
    return ss.str();
}

Matrix read_feature_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<double> values;
    std::size_t rows = 0, cols = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        std::size_t count = 0;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            auto v = parse_real(cell);
            if (!v) throw ParseError(lineno, "invalid feature value '" + cell + "'");
            values.push_back(*v);
            ++count;
        }
        if (rows == 0) cols = count;
        if (count != cols) throw ParseError(lineno, "inconsistent number of feature columns");
        ++rows;
    }
    return Matrix(rows, cols, std::move(values));
}

// --- option groups ---------------------------------------------------------------

struct GraphInput {
    std::string path;
    std::string features;
    std::size_t knn = 10;
    bool lcc = false;

    void attach(CLI::App& app) {
        app.add_option("-i,--input", path, "Edge list ('u v' or 'u v w' per line)");
        app.add_option("--features", features, "Node feature CSV; builds a cosine kNN graph instead of -i");
        app.add_option("--knn", knn, "Neighbours per node for --features")->capture_default_str();
        app.add_flag("--lcc", lcc, "Restrict to the largest connected component");
    }

    Graph load() const {
        Graph g;
        if (!features.empty()) {
            if (!path.empty()) throw ArgumentError("use either --input or --features, not both");
            g = build_knn_graph(read_feature_csv(features), knn);
        } else {
            if (path.empty()) throw ArgumentError("an input graph is required (--input or --features)");
            std::istringstream in(read_file(path));
            g = load_edge_list(in);
        }
        if (lcc) g = largest_connected_component(g).graph;
        return g;
    }
};

struct EncodingFlags {
    int max_dim = 0;
    std::size_t nu = 0;
    double max_scale = std::numeric_limits<double>::infinity();
    std::string algorithm = "reduction";

    void attach(CLI::App& app) {
        app.add_option("--max-dim", max_dim, "Homology dimension to compute (0 or 1)")->capture_default_str();
        app.add_option("--nu", nu, "Witness relaxation: subtract the nu-th nearest landmark distance")
            ->capture_default_str();
        app.add_option("--max-scale", max_scale, "Drop simplices entering above this scale")->capture_default_str();
        app.add_option("--algorithm", algorithm, "Persistence algorithm")
            ->check(CLI::IsMember({"reduction", "union-find"}))
            ->capture_default_str();
    }

    EncodingOptions options() const {
        EncodingOptions o;
        o.homology_dim = max_dim;
        o.nu = nu;
        o.max_scale = max_scale;
        o.algorithm = algorithm == "union-find" ? PersistenceAlgorithm::UnionFind : PersistenceAlgorithm::Reduction;
        o.validate();
        return o;
    }
};

struct ImageFlags {
    std::size_t grid = 10;
    double sigma = 1.0;
    std::vector<double> birth_range;
    std::vector<double> pers_range;
    std::string essential_policy = "cap";
    std::optional<double> cap;

    void attach(CLI::App& app) {
        app.add_option("--grid", grid, "Image resolution (grid x grid pixels)")->capture_default_str();
        app.add_option("--sigma", sigma, "Gaussian kernel standard deviation")->capture_default_str();
        app.add_option("--birth-range", birth_range, "Birth axis lo,hi (default 0,extent)")
            ->delimiter(',')
            ->expected(2);
        app.add_option("--pers-range", pers_range, "Persistence axis lo,hi (default 0,extent)")
            ->delimiter(',')
            ->expected(2);
        app.add_option("--essential-policy", essential_policy, "Essential classes: cap at --cap or drop")
            ->check(CLI::IsMember({"cap", "drop"}))
            ->capture_default_str();
        app.add_option("--cap", cap, "Death assigned to essential classes (default extent + 1)");
    }

    /// `extent` is the diameter of the largest component, or the largest finite death for
    /// diagrams read from disk.
    PIConfig config(double extent) const {
        PIConfig cfg = PIConfig::for_diameter(extent, grid, sigma);
        if (!birth_range.empty()) {
            cfg.birth_lo = birth_range[0];
            cfg.birth_hi = birth_range[1];
        }
        if (!pers_range.empty()) {
            cfg.pers_lo = pers_range[0];
            cfg.pers_hi = pers_range[1];
        }
        cfg.essential_policy = essential_policy == "drop" ? EssentialPolicy::Drop : EssentialPolicy::Cap;
        if (cap) cfg.cap = *cap;
        cfg.validate();
        return cfg;
    }
};

double lcc_diameter(const Graph& g) { return diameter(largest_connected_component(g).graph); }

PerturbMode parse_mode(const std::string& s) {
    return s == "targeted" ? PerturbMode::LandmarkTargeted : PerturbMode::Random;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Witness-complex topological features and stability checks for graphs", "wtopo"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::string output;
    auto add_output = [&](CLI::App& sub, const char* what) {
        sub.add_option("-o,--output", output, what)->capture_default_str();
    };
    std::function<void()> action;

    // landmarks
    GraphInput lm_in;
    double lm_fraction = 0.05;
    auto* lm = app.add_subcommand("landmarks", "Degree-centrality landmark selection");
    lm_in.attach(*lm);
    lm->add_option("--fraction", lm_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    add_output(*lm, "Output JSON (default stdout)");
    lm->callback([&] {
        action = [&] {
            const auto g = lm_in.load();
            emit(output, landmarks_to_json(select_landmarks(g, lm_fraction)) + "\n", out);
        };
    });

    // cover
    GraphInput cv_in;
    double cv_fraction = 0.05;
    auto* cv = app.add_subcommand("cover", "Voronoi cover around the landmarks");
    cv_in.attach(*cv);
    cv->add_option("--fraction", cv_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    add_output(*cv, "Output JSON (default stdout)");
    cv->callback([&] {
        action = [&] {
            const auto g = cv_in.load();
            emit(output, cover_to_json(build_cover(g, select_landmarks(g, cv_fraction))) + "\n", out);
        };
    });

    // diagram
    GraphInput dg_in;
    EncodingFlags dg_enc;
    double dg_fraction = 0.05;
    std::string dg_complex = "witness";
    std::string dg_filtration;
    auto* dg = app.add_subcommand("diagram", "Persistence diagram of the global landmark complex");
    dg_in.attach(*dg);
    dg_enc.attach(*dg);
    dg->add_option("--fraction", dg_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    dg->add_option("--complex", dg_complex, "Complex built on the landmarks")
        ->check(CLI::IsMember({"witness", "vr"}))
        ->capture_default_str();
    dg->add_option("--filtration", dg_filtration, "Also write the filtration as JSON lines");
    add_output(*dg, "Output diagram JSON (default stdout)");
    dg->callback([&] {
        action = [&] {
            const auto g = dg_in.load();
            const auto opts = dg_enc.options();
            const auto ls = select_landmarks(g, dg_fraction);
            Filtration f;
            if (dg_complex == "vr") {
                f = vr_filtration(geodesics(g, ls.landmarks).source_block(), opts.homology_dim + 1, opts.max_scale);
            } else {
                f = global_topology(g, ls, opts).filtration;
            }
            const auto d = compute_persistence(f, opts.algorithm, opts.homology_dim);
            if (!dg_filtration.empty()) {
                emit(dg_filtration, render([&](std::ostream& s) { write_filtration_jsonl(s, f); }), out);
            }
            emit(output, diagram_to_json(d, opts.homology_dim) + "\n", out);
        };
    });

    // image
    std::string im_input;
    ImageFlags im_flags;
    int im_dim = 0;
    auto* im = app.add_subcommand("image", "Persistence image of a diagram file");
    im->add_option("-i,--input", im_input, "Diagram JSON")->required();
    im->add_option("--dim", im_dim, "Homology dimension to vectorise")->capture_default_str();
    im_flags.attach(*im);
    add_output(*im, "Output CSV (default stdout)");
    im->callback([&] {
        action = [&] {
            const auto d = diagram_from_json(read_file(im_input));
            double extent = 0.0;
            for (const auto& p : d.points()) extent = std::max(extent, p.essential() ? p.birth : p.death);
            const auto img = persistence_image(d, im_flags.config(extent), im_dim);
            emit(output, render([&](std::ostream& s) { write_image_csv(s, img); }), out);
        };
    });

    // local-features
    GraphInput lf_in;
    EncodingFlags lf_enc;
    ImageFlags lf_img;
    double lf_fraction = 0.05;
    std::string lf_binary;
    auto* lf = app.add_subcommand("local-features", "Per-node local witness persistence images");
    lf_in.attach(*lf);
    lf_enc.attach(*lf);
    lf_img.attach(*lf);
    lf->add_option("--fraction", lf_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    lf->add_option("--binary", lf_binary, "Also write the little-endian binary feature block");
    add_output(*lf, "Output CSV, one row per node (default stdout)");
    lf->callback([&] {
        action = [&] {
            const auto g = lf_in.load();
            const auto cfg = lf_img.config(lcc_diameter(g));
            const auto m = local_encoding(g, lf_fraction, cfg, lf_enc.options());
            if (!lf_binary.empty()) {
                emit(lf_binary, render([&](std::ostream& s) { write_features_binary(s, m); }), out);
            }
            emit(output, render([&](std::ostream& s) { write_features_csv(s, m); }), out);
        };
    });

    // global-features
    GraphInput gf_in;
    EncodingFlags gf_enc;
    ImageFlags gf_img;
    double gf_fraction = 0.05;
    auto* gf = app.add_subcommand("global-features", "Global witness persistence image");
    gf_in.attach(*gf);
    gf_enc.attach(*gf);
    gf_img.attach(*gf);
    gf->add_option("--fraction", gf_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    add_output(*gf, "Output CSV (default stdout)");
    gf->callback([&] {
        action = [&] {
            const auto g = gf_in.load();
            const auto img = global_encoding(g, gf_fraction, gf_img.config(lcc_diameter(g)), gf_enc.options());
            emit(output, render([&](std::ostream& s) { write_image_csv(s, img); }), out);
        };
    });

    // loss
    std::string ls_input;
    TopoLossConfig ls_cfg;
    int ls_dim = 0;
    bool ls_grad = false;
    auto* lsc = app.add_subcommand("loss", "Topological loss of a diagram");
    lsc->add_option("-i,--input", ls_input, "Diagram JSON")->required();
    lsc->add_option("--p", ls_cfg.p, "Persistence exponent")->capture_default_str();
    lsc->add_option("--q", ls_cfg.q, "Mid-life exponent")->capture_default_str();
    lsc->add_option("--dim", ls_dim, "Homology dimension")->capture_default_str();
    lsc->add_flag("--grad", ls_grad, "Write per-point gradients (birth,death,d_birth,d_death) instead");
    add_output(*lsc, "Output file (default stdout)");
    lsc->callback([&] {
        action = [&] {
            const auto d = diagram_from_json(read_file(ls_input));
            if (!ls_grad) {
                emit(output, format_real(topo_loss(d, ls_cfg, ls_dim)) + "\n", out);
                return;
            }
            const auto pts = d.finite(ls_dim);
            const auto grad = topo_loss_grad(d, ls_cfg, ls_dim);
            emit(output, render([&](std::ostream& s) {
                     s << "birth,death,d_birth,d_death\n";
                     for (std::size_t i = 0; i < pts.size(); ++i) {
                         s << format_real(pts[i].birth) << ',' << format_real(pts[i].death) << ','
                           << format_real(grad[i].d_birth) << ',' << format_real(grad[i].d_death) << '\n';
                     }
                 }),
                 out);
        };
    });

    // distance
    std::string ds_a, ds_b, ds_mode = "bottleneck", ds_ess = "match";
    double ds_p = 1.0;
    int ds_dim = 0;
    auto* ds = app.add_subcommand("distance", "Bottleneck or Wasserstein distance between two diagrams");
    ds->add_option("-a,--first", ds_a, "First diagram JSON")->required();
    ds->add_option("-b,--second", ds_b, "Second diagram JSON")->required();
    ds->add_option("--mode", ds_mode, "Distance")
        ->check(CLI::IsMember({"bottleneck", "wasserstein"}))
        ->capture_default_str();
    ds->add_option("--p", ds_p, "Wasserstein exponent")->capture_default_str();
    ds->add_option("--dim", ds_dim, "Homology dimension")->capture_default_str();
    ds->add_option("--essential", ds_ess, "Essential classes: match to each other or drop")
        ->check(CLI::IsMember({"match", "drop"}))
        ->capture_default_str();
    add_output(*ds, "Output file (default stdout)");
    ds->callback([&] {
        action = [&] {
            const auto a = diagram_from_json(read_file(ds_a));
            const auto b = diagram_from_json(read_file(ds_b));
            const auto mode = ds_mode == "bottleneck" ? DistanceMode::bottleneck() : DistanceMode::wasserstein(ds_p);
            const auto ess = ds_ess == "drop" ? EssentialMatching::Drop : EssentialMatching::Match;
            emit(output, format_real(diagram_distance(a, b, mode, ds_dim, ess)) + "\n", out);
        };
    });

    // perturb
    GraphInput pt_in;
    std::optional<std::size_t> pt_budget;
    std::optional<double> pt_rate;
    std::string pt_mode = "random";
    std::uint64_t pt_seed = 0;
    double pt_fraction = 0.05;
    auto* pt = app.add_subcommand("perturb", "Flip a budget of node pairs");
    pt_in.attach(*pt);
    auto* pt_budget_opt = pt->add_option("--budget", pt_budget, "Number of pairs to flip");
    pt->add_option("--rate", pt_rate, "Budget as a fraction of the edge count")->excludes(pt_budget_opt);
    pt->add_option("--mode", pt_mode, "Candidate pairs")
        ->check(CLI::IsMember({"random", "targeted"}))
        ->capture_default_str();
    pt->add_option("--seed", pt_seed, "Random seed")->capture_default_str();
    pt->add_option("--fraction", pt_fraction, "Landmark fraction for targeted mode")->capture_default_str();
    add_output(*pt, "Output edge list (default stdout)");
    pt->callback([&] {
        action = [&] {
            const auto g = pt_in.load();
            PerturbSpec spec;
            spec.budget = pt_rate ? budget_from_rate(g, *pt_rate) : pt_budget.value_or(0);
            spec.mode = parse_mode(pt_mode);
            spec.seed = pt_seed;
            spec.landmark_fraction = pt_fraction;
            err << "seed: " << pt_seed << '\n';
            const auto poisoned = perturb(g, spec);
            emit(output, render([&](std::ostream& s) { write_edge_list(s, poisoned); }), out);
        };
    });

    // sweep
    GraphInput sw_in;
    EncodingFlags sw_enc;
    ImageFlags sw_img;
    std::vector<std::size_t> sw_budgets;
    std::vector<double> sw_rates;
    std::size_t sw_trials = 1;
    std::uint64_t sw_seed = 0;
    double sw_fraction = 0.05;
    double sw_wp = 1.0;
    std::string sw_mode = "random";
    bool sw_freeze = false;
    TopoLossConfig sw_loss;
    auto* sw = app.add_subcommand("sweep", "Stability of the encodings under growing perturbation budgets");
    sw_in.attach(*sw);
    sw_enc.attach(*sw);
    sw_img.attach(*sw);
    auto* sw_budget_opt = sw->add_option("--budgets", sw_budgets, "Comma-separated budgets")->delimiter(',');
    sw->add_option("--rates", sw_rates, "Comma-separated budgets as fractions of the edge count")
        ->delimiter(',')
        ->excludes(sw_budget_opt);
    sw->add_option("--trials", sw_trials, "Trials per budget")->capture_default_str();
    sw->add_option("--seed", sw_seed, "Base seed; trial t uses seed + t")->capture_default_str();
    sw->add_option("--fraction", sw_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    sw->add_option("--mode", sw_mode, "Candidate pairs")
        ->check(CLI::IsMember({"random", "targeted"}))
        ->capture_default_str();
    sw->add_option("--wasserstein-p", sw_wp, "Exponent of the local diagram distance")->capture_default_str();
    sw->add_option("--p", sw_loss.p, "Loss persistence exponent")->capture_default_str();
    sw->add_option("--q", sw_loss.q, "Loss mid-life exponent")->capture_default_str();
    sw->add_flag("--freeze-landmarks", sw_freeze, "Keep the clean graph's landmarks on perturbed graphs");
    add_output(*sw, "Output report CSV (default stdout)");
    sw->callback([&] {
        action = [&] {
            const auto g = sw_in.load();
            SweepConfig cfg;
            if (!sw_rates.empty()) {
                for (double r : sw_rates) cfg.budgets.push_back(budget_from_rate(g, r));
            } else {
                cfg.budgets = sw_budgets;
            }
            if (cfg.budgets.empty()) throw ArgumentError("sweep needs --budgets or --rates");
            cfg.trials = sw_trials;
            cfg.fraction = sw_fraction;
            cfg.pi = sw_img.config(lcc_diameter(g));
            cfg.loss = sw_loss;
            cfg.encoding = sw_enc.options();
            cfg.mode = parse_mode(sw_mode);
            cfg.base_seed = sw_seed;
            cfg.wasserstein_p = sw_wp;
            cfg.freeze_landmarks = sw_freeze;
            err << "seed: " << sw_seed << '\n';
            const auto report = stability_sweep(g, cfg);
            emit(output, render([&](std::ostream& s) { write_report_csv(s, report); }), out);
        };
    });

    // sandwich
    GraphInput sd_in;
    double sd_fraction = 0.05;
    std::optional<double> sd_alpha, sd_epsilon;
    int sd_max_dim = 2;
    std::size_t sd_nu = 0;
    auto* sd = app.add_subcommand("sandwich", "Check VR(a/3) <= Wit(a) <= VR(3a) on the landmarks");
    sd_in.attach(*sd);
    sd->add_option("--fraction", sd_fraction, "Fraction of nodes used as landmarks")->capture_default_str();
    sd->add_option("--alpha", sd_alpha, "Scale to test (default 2 * epsilon + 1)");
    sd->add_option("--epsilon", sd_epsilon, "Net radius (default half the largest landmark distance)");
    sd->add_option("--max-dim", sd_max_dim, "Largest simplex dimension compared")->capture_default_str();
    sd->add_option("--nu", sd_nu, "Witness relaxation")->capture_default_str();
    add_output(*sd, "Output file (default stdout)");
    sd->callback([&] {
        action = [&] {
            const auto g = sd_in.load();
            const auto cover = build_cover(g, select_landmarks(g, sd_fraction));
            const double eps = sd_epsilon.value_or(cover.epsilon_pairwise);
            const double alpha = sd_alpha.value_or(2.0 * eps + 1.0);
            const auto& dm = cover.landmark_distances;
            const auto result = sandwich_check(dm.source_block(), dm.transposed(), alpha, eps, sd_max_dim, sd_nu);
            const char* label = result == SandwichResult::Holds      ? "holds"
                                : result == SandwichResult::Violated ? "violated"
                                                                     : "not-applicable";
            emit(output,
                 std::string(label) + " alpha=" + format_real(alpha) + " epsilon=" + format_real(eps) + "\n", out);
        };
    });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (action) action();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace wtopo::cli
