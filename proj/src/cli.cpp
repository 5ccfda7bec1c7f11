#include "rce/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rce/digest.hpp"
#include "rce/ensemble.hpp"
#include "rce/erasing.hpp"
#include "rce/errors.hpp"
#include "rce/pipeline.hpp"
#include "rce/rng.hpp"

namespace rce::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// apply

struct ApplyOptions {
    std::string input;
    std::string output;
    RceConfig cfg;
    std::string direction{to_string(Direction::GrayOnColor)};
    std::uint64_t seed = 0;
    unsigned passes = 1;
    std::string workers = "auto";
};

unsigned resolve_workers(const std::string& text) {
    if (text == "auto") return std::max(1u, std::thread::hardware_concurrency());
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || v < 1 || v > 4096) throw UsageError("--workers must be 'auto' or a positive integer, got '" + text + "'");
    return static_cast<unsigned>(v);
}

int do_apply(const ApplyOptions& opt, std::ostream& out) {
    CorpusJob job;
    job.input_root = opt.input;
    job.output_root = opt.output;
    job.cfg = opt.cfg;
    try {
        job.cfg.direction = parse_direction(opt.direction);
        job.cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    job.master_seed = opt.seed;
    job.passes = opt.passes;
    job.workers = resolve_workers(opt.workers);

    const Manifest manifest = run_corpus(job);

    std::map<Branch, std::size_t> counts{
        {Branch::Identity, 0}, {Branch::Global, 0}, {Branch::Local, 0}, {Branch::LocalNoFit, 0}};
    for (const auto& e : manifest.entries) ++counts[e.record.branch];
    const std::string text = to_jsonl(manifest);

    out << "sources: " << manifest.entries.size() / job.passes << "\n";
    out << "outputs: " << manifest.entries.size() << "\n";
    for (const auto& [branch, n] : counts) out << to_string(branch) << ": " << n << "\n";
    out << "warnings: " << manifest.warnings.size() << "\n";
    for (const auto& w : manifest.warnings) out << "  skipped " << w.path << ": " << w.message << "\n";
    out << "manifest: " << (job.output_root / kManifestFileName).generic_string() << "\n";
    out << "manifest_digest: " << to_hex(fnv1a64(text)) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// stats

struct StatsOptions {
    std::string sweep;
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t width = 256;
    std::size_t height = 128;
    double p_r = 0.40;
    double p_g = 0.15;
};

int do_stats(const StatsOptions& opt, std::ostream& out) {
    if (!(opt.step > 0.0) || !std::isfinite(opt.step)) throw UsageError("--step must be positive");
    if (!(opt.from <= opt.to)) throw UsageError("empty sweep range: --from is greater than --to");
    if (opt.from < 0.0 || opt.to > 1.0) throw UsageError("sweep range must lie within [0, 1]");
    if (opt.trials < 1) throw UsageError("--trials must be >= 1");
    if (opt.width < 1 || opt.height < 1) throw UsageError("--width and --height must be >= 1");
    const bool sweep_pr = opt.sweep == "p_r";

    // Tolerates accumulated decimal error in (to - from) / step.
    const auto points = static_cast<std::size_t>(std::floor((opt.to - opt.from) / opt.step + 1e-9)) + 1;
    const double image_area = static_cast<double>(opt.width) * static_cast<double>(opt.height);

    out << opt.sweep << ",identity,global,local,local_nofit,mean_gray_fraction\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double value = std::min(1.0, opt.from + static_cast<double>(i) * opt.step);
        RceConfig cfg;
        cfg.p_r = sweep_pr ? value : opt.p_r;
        cfg.p_g = sweep_pr ? opt.p_g : value;
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }

        // Same trial seeds at every sweep point, so neighbouring rows share draws.
        SplitMix64 seeder(opt.seed);
        std::map<Branch, std::size_t> counts;
        double gray_fraction = 0.0;
        for (std::size_t t = 0; t < opt.trials; ++t) {
            RngStream rng(seeder.next());
            const AugmentationRecord rec = decide_rce(opt.width, opt.height, cfg, rng);
            ++counts[rec.branch];
            if (rec.branch == Branch::Global) gray_fraction += 1.0;
            if (rec.branch == Branch::Local) gray_fraction += static_cast<double>(rec.rect->area()) / image_area;
        }
        const auto n = static_cast<double>(opt.trials);
        out << fixed(value) << ',' << fixed(counts[Branch::Identity] / n) << ',' << fixed(counts[Branch::Global] / n)
            << ',' << fixed(counts[Branch::Local] / n) << ',' << fixed(counts[Branch::LocalNoFit] / n) << ','
            << fixed(gray_fraction / n) << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// ensemble-verify

struct VerifyOptions {
    std::string instance;
    std::size_t substitute = 0;
    std::string replacement;
    bool search = false;
};

template <typename Parse>
auto parse_file(const std::string& path, Parse parse) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw ParseError(e.message() + " (in " + path + ")", e.line(), e.column());
    }
}

void print_report(std::ostream& out, const ensemble::SubstitutionReport& r) {
    out << "error_before: " << r.error_before << "\n";
    out << "error_after: " << r.error_after << "\n";
    out << "per_sample_ok: [";
    for (std::size_t j = 0; j < r.per_sample_ok.size(); ++j) out << (j ? "," : "") << (r.per_sample_ok[j] ? "true" : "false");
    out << "]\n";
    out << "ties_before: " << r.tie_count_before << "\n";
    out << "ties_after: " << r.tie_count_after << "\n";
    out << "benefit: " << (r.benefit ? "true" : "false") << "\n";
}

int do_verify(const VerifyOptions& opt, std::ostream& out) {
    using namespace ensemble;
    const VoteInstance inst = parse_file(opt.instance, [](std::istream& in) { return parse_instance(in); });
    if (opt.substitute > inst.n_components()) {
        throw BoundsError("--substitute " + std::to_string(opt.substitute) + " outside 1.." +
                          std::to_string(inst.n_components()));
    }
    const std::size_t e = opt.substitute - 1;

    out << "instance: N=" << inst.n_components() << " k=" << inst.n_samples() << "\n";
    for (std::size_t i = 0; i < inst.n_components(); ++i) out << "E_" << i + 1 << ": " << component_error(inst, i) << "\n";
    out << "ensemble_error: " << ensemble_error(inst) << "\n";
    out << "brute_force_error: " << brute_force_error(inst) << "\n";
    out << "ties: " << tie_count(inst) << "\n";
    out << "substitute: component " << opt.substitute << "\n";

    if (!opt.replacement.empty()) {
        const std::size_t k = inst.n_samples();
        const LabelVector replacement =
            parse_file(opt.replacement, [k](std::istream& in) { return parse_label_vector(in, k); });
        out << "replacement: " << format_labels(replacement) << "\n";
        print_report(out, substitute_and_compare(inst, e, replacement));
    } else if (opt.search) {
        const auto found = search_beneficial_substitutions(inst, e);
        out << "beneficial_replacements: " << found.size() << "\n";
        for (const auto& c : found) {
            out << format_labels(c.replacement) << " error_after=" << c.report.error_after
                << " ties_after=" << c.report.tie_count_after
                << " all_samples_ok=" << (c.report.all_samples_ok() ? "true" : "false") << "\n";
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random color erasing: corpus augmentation, branch statistics and ensemble analysis", "rce"};
    app.require_subcommand(1);
    // Config is only honoured on the top-level app; fallthrough lets it follow the subcommand name.
    app.set_config("--config", "", "TOML file with option defaults ([apply] table); flags override it");
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);

    ApplyOptions apply;
    auto* apply_cmd = app.add_subcommand("apply", "Augment every image under --input into --output");
    apply_cmd->add_option("--input", apply.input, "Input image directory")->required();
    apply_cmd->add_option("--output", apply.output, "Output directory")->required();
    apply_cmd->add_option("--p-r", apply.cfg.p_r, "Erasing probability")->capture_default_str();
    apply_cmd->add_option("--p-g", apply.cfg.p_g, "Global (whole-image) probability, given erasing")->capture_default_str();
    apply_cmd->add_option("--seed", apply.seed, "Master seed")->capture_default_str();
    apply_cmd->add_option("--passes", apply.passes, "Augmented copies per source image")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    apply_cmd->add_option("--workers", apply.workers, "Worker threads, or 'auto'")->capture_default_str();
    apply_cmd->add_option("--area-lo", apply.cfg.region.area_lo, "Minimum rect area fraction")->capture_default_str();
    apply_cmd->add_option("--area-hi", apply.cfg.region.area_hi, "Maximum rect area fraction")->capture_default_str();
    apply_cmd->add_option("--aspect-lo", apply.cfg.region.aspect_lo, "Minimum rect aspect (h/w)")->capture_default_str();
    apply_cmd->add_option("--aspect-hi", apply.cfg.region.aspect_hi, "Maximum rect aspect (h/w)")->capture_default_str();
    apply_cmd->add_option("--max-attempts", apply.cfg.region.max_attempts, "Rect sampling attempts")->capture_default_str();
    apply_cmd->add_option("--direction", apply.direction, "Patch direction")
        ->check(CLI::IsMember({"gray-on-color", "color-on-gray"}))
        ->capture_default_str();

    StatsOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "Sweep p_r or p_g and print branch frequencies as CSV");
    stats_cmd->add_option("--sweep", stats.sweep, "Parameter to sweep")->required()->check(CLI::IsMember({"p_r", "p_g"}));
    stats_cmd->add_option("--from", stats.from, "First sweep value")->required();
    stats_cmd->add_option("--to", stats.to, "Last sweep value")->required();
    stats_cmd->add_option("--step", stats.step, "Sweep increment")->required();
    stats_cmd->add_option("--trials", stats.trials, "Random streams per sweep point")->required();
    stats_cmd->add_option("--seed", stats.seed, "Seed")->required();
    stats_cmd->add_option("--width", stats.width, "Image width")->capture_default_str();
    stats_cmd->add_option("--height", stats.height, "Image height")->capture_default_str();
    stats_cmd->add_option("--p-r", stats.p_r, "Fixed p_r when sweeping p_g")->capture_default_str();
    stats_cmd->add_option("--p-g", stats.p_g, "Fixed p_g when sweeping p_r")->capture_default_str();

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("ensemble-verify", "Majority-vote error analysis of a vote instance file");
    verify_cmd->add_option("--instance", verify.instance, "Instance file")->required();
    verify_cmd->add_option("--substitute", verify.substitute, "1-based component to substitute")
        ->required()
        ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30, "INDEX >= 1"));
    auto* replacement_opt = verify_cmd->add_option("--replacement", verify.replacement, "File with the replacement row");
    auto* search_flag = verify_cmd->add_flag("--search", verify.search, "Enumerate all improving replacements");
    replacement_opt->excludes(search_flag);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (apply_cmd->parsed()) return do_apply(apply, out);
        if (stats_cmd->parsed()) return do_stats(stats, out);
        return do_verify(verify, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kData;
    } catch (const BoundsError& e) {
        err << "index error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    }
}

}  // namespace rce::cli
