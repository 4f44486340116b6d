#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treemaplab/algorithms.hpp"
#include "treemaplab/metrics.hpp"
#include "treemaplab/serialization.hpp"
#include "treemaplab/svg.hpp"

namespace {

using namespace treemaplab;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;  // I/O, parsing, validation, solver failures
constexpr int exit_usage = 2;    // option combinations the tool rejects

struct Options {
    std::string input;
    std::string input_format;  // "", "json" or "csv"
    std::vector<double> container;
    std::string algorithm = "dp";
    std::string algorithms = "squarified,dc,mdc,dp,sspiral,sqbundle,stbundle";
    double c = 2.0;
    double rho = 2.0;
    int alpha = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::string levels = "0.01,0.05,0.1";
    int rounds = 10;
    bool cumulative = false;
    std::string format;
    std::string out;
    bool strict = false;
    bool labels = false;
    double width_px = 800.0;
    std::uint64_t color_seed = 0;
};

int worker_threads() {
    const char* env = std::getenv("TREEMAP_THREADS");
    if (env == nullptr) {
        return 1;
    }
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin),
                           std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open input file '" + path + "'");
    }
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        throw std::runtime_error("cannot write output file '" + path + "'");
    }
}

TreeFormat sniff_format(const Options& opt) {
    if (opt.input_format == "json") {
        return TreeFormat::json;
    }
    if (opt.input_format == "csv") {
        return TreeFormat::csv;
    }
    if (opt.input.size() >= 4 && opt.input.rfind(".csv") == opt.input.size() - 4) {
        return TreeFormat::csv;
    }
    return TreeFormat::json;
}

WeightedTree load_tree(const Options& opt) {
    WeightedTree tree = parse_tree(read_input(opt.input), sniff_format(opt));
    validate_tree(tree);
    return tree;
}

std::optional<Rect> container_of(const Options& opt) {
    if (opt.container.empty()) {
        return std::nullopt;
    }
    return Rect{0.0, 0.0, opt.container[0], opt.container[1]};
}

// Spiral-family algorithms build their own container; the others fill the
// one given on the command line.
void check_container_usage(AlgorithmId id, const std::optional<Rect>& container) {
    if (builds_own_container(id) && container.has_value()) {
        throw std::invalid_argument("--container cannot be combined with " +
                                    algorithm_name(id));
    }
    if (!builds_own_container(id) && !container.has_value()) {
        throw std::invalid_argument(algorithm_name(id) + " requires --container W H");
    }
}

void check_normalization(const WeightedTree& tree, const std::optional<Rect>& container,
                         bool strict) {
    if (!container.has_value()) {
        return;
    }
    double total = sum_leaf_weights(tree);
    double target = container->area();
    if (std::abs(total - target) <= 1e-9 * std::max(total, target)) {
        return;
    }
    std::ostringstream msg;
    msg << "areas sum to " << total << " but the container area is " << target
        << "; rescaling";
    if (strict) {
        throw std::runtime_error(msg.str());
    }
    std::cerr << "warning: " << msg.str() << "\n";
}

AlgorithmOptions algorithm_options(const Options& opt) {
    AlgorithmOptions a;
    a.c = opt.c;
    a.seed_ratio = opt.rho;
    a.alpha = opt.alpha;
    a.beta = opt.beta;
    return a;
}

std::string format_rows(const std::vector<ReportRow>& rows, const std::string& format) {
    if (format == "json") {
        return rows_to_json(rows);
    }
    if (format == "md") {
        return rows_to_markdown(rows);
    }
    return rows_to_csv(rows);
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

ReportRow make_row(const std::string& algorithm, const Layout& layout,
                   std::uint64_t seed) {
    LayoutMetrics m = compute_metrics(layout);
    ReportRow row;
    row.algorithm = algorithm;
    row.n = static_cast<int>(layout.cells.size());
    row.seed = seed;
    row.perimeter = m.perimeter;
    row.max_ar = m.max_ar;
    row.avg_ar = m.avg_ar;
    row.awar = m.awar;
    return row;
}

int cmd_layout(const Options& opt) {
    AlgorithmId id;
    std::optional<Rect> container;
    try {
        id = parse_algorithm(opt.algorithm);
        container = container_of(opt);
        check_container_usage(id, container);
        if (!opt.format.empty() && opt.format != "json" && opt.format != "csv" &&
            opt.format != "md") {
            throw std::invalid_argument("--format must be json, csv or md");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        WeightedTree tree = load_tree(opt);
        check_normalization(tree, container, opt.strict);
        Layout layout = layout_tree(id, container, tree, algorithm_options(opt));
        std::vector<ReportRow> rows{make_row(opt.algorithm, layout, opt.seed)};
        std::string doc = layout_to_json(layout);
        if (opt.out.empty()) {
            // Layout JSON owns stdout; the metrics row remains visible.
            std::cerr << format_rows(rows, opt.format);
            std::cout << doc;
        } else {
            write_output(opt.out, doc);
            std::cout << format_rows(rows, opt.format);
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

int cmd_compare(const Options& opt) {
    std::vector<AlgorithmId> ids;
    std::optional<Rect> container;
    try {
        for (const std::string& name : split_csv(opt.algorithms)) {
            ids.push_back(parse_algorithm(name));
        }
        if (ids.empty()) {
            throw std::invalid_argument("--algorithms must name at least one algorithm");
        }
        container = container_of(opt);
        for (AlgorithmId id : ids) {
            if (!builds_own_container(id) && !container.has_value()) {
                throw std::invalid_argument(algorithm_name(id) +
                                            " requires --container W H");
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        WeightedTree tree = load_tree(opt);
        check_normalization(tree, container, opt.strict);
        std::vector<ReportRow> rows;
        for (AlgorithmId id : ids) {
            std::optional<Rect> box =
                builds_own_container(id) ? std::nullopt : container;
            Layout layout = layout_tree(id, box, tree, algorithm_options(opt));
            rows.push_back(make_row(algorithm_name(id), layout, opt.seed));
        }
        write_output(opt.out, format_rows(rows, opt.format.empty() ? "md" : opt.format));
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

int cmd_study(const Options& opt) {
    AlgorithmId id;
    std::optional<Rect> container;
    std::vector<double> levels;
    try {
        id = parse_algorithm(opt.algorithm);
        container = container_of(opt);
        check_container_usage(id, container);
        for (const std::string& item : split_csv(opt.levels)) {
            levels.push_back(std::stod(item));
        }
        if (levels.empty()) {
            throw std::invalid_argument("--levels must list at least one level");
        }
        if (opt.rounds <= 0) {
            throw std::invalid_argument("--rounds must be positive");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    try {
        WeightedTree tree = load_tree(opt);
        check_normalization(tree, container, opt.strict);
        AreaList base = leaf_areas(tree);
        AlgorithmOptions aopts = algorithm_options(opt);
        auto layout_fn = [&](const AreaList& areas) {
            return run_algorithm(id, container, areas, aopts);
        };
        std::vector<LevelStability> stability =
            stability_study(layout_fn, base, levels, opt.rounds, opt.seed, worker_threads(),
                            opt.cumulative);
        Layout base_layout = layout_fn(base);
        std::vector<ReportRow> rows;
        for (const LevelStability& s : stability) {
            ReportRow row = make_row(opt.algorithm, base_layout, opt.seed);
            row.level = s.level;
            row.rounds = s.rounds;
            row.max_hd = s.max_hd;
            row.avg_hd = s.avg_hd;
            rows.push_back(row);
        }
        write_output(opt.out, format_rows(rows, opt.format));
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

int cmd_render(const Options& opt) {
    try {
        Layout layout = layout_from_json(read_input(opt.input));
        SvgOptions svg;
        svg.labels = opt.labels;
        svg.width_px = opt.width_px;
        svg.color_seed = opt.color_seed;
        write_output(opt.out, render_svg(layout, svg));
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

void add_input_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--input", opt.input, "tree file, or - for stdin")->required();
    cmd->add_option("--input-format", opt.input_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out, "output file (default stdout)");
}

void add_layout_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--container", opt.container,
                    "container width and height (origin at 0 0)")
        ->expected(2);
    cmd->add_option("--c", opt.c, "deviation guard for mdc");
    cmd->add_option("--rho", opt.rho, "seed aspect ratio for the spiral family");
    cmd->add_option("--alpha", opt.alpha, "optimizer cost weighting")
        ->check(CLI::Range(0, 1));
    cmd->add_option("--beta", opt.beta, "optimizer orientation reward")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", opt.seed, "seed recorded in reports");
    cmd->add_flag("--strict", opt.strict, "treat the rescaling warning as an error");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rectangular treemap layout and benchmarking tool"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* layout = app.add_subcommand("layout", "lay out one tree");
    add_input_options(layout, opt);
    add_layout_options(layout, opt);
    layout->add_option("--algorithm", opt.algorithm, "layout algorithm");
    layout->add_option("--format", opt.format, "metrics row format")
        ->check(CLI::IsMember({"json", "csv", "md"}));

    CLI::App* compare = app.add_subcommand("compare", "run several algorithms");
    add_input_options(compare, opt);
    add_layout_options(compare, opt);
    compare->add_option("--algorithms", opt.algorithms, "comma-separated algorithms");
    compare->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "md"}));

    CLI::App* study = app.add_subcommand("study", "perturbation stability study");
    add_input_options(study, opt);
    add_layout_options(study, opt);
    study->add_option("--algorithm", opt.algorithm, "layout algorithm");
    study->add_option("--levels", opt.levels, "comma-separated perturbation levels");
    study->add_option("--rounds", opt.rounds, "perturbations per level");
    study->add_flag("--cumulative", opt.cumulative,
                    "perturb each round's areas instead of the base areas");
    study->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "md"}));

    CLI::App* render = app.add_subcommand("render", "render a layout JSON as SVG");
    add_input_options(render, opt);
    render->add_flag("--labels", opt.labels, "draw cell names");
    render->add_option("--width", opt.width_px, "image width in pixels")
        ->check(CLI::PositiveNumber);
    render->add_option("--color-seed", opt.color_seed, "fill color seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (layout->parsed()) {
        return cmd_layout(opt);
    }
    if (compare->parsed()) {
        return cmd_compare(opt);
    }
    if (study->parsed()) {
        return cmd_study(opt);
    }
    return cmd_render(opt);
}
