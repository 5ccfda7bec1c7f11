#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rce/digest.hpp"
#include "rce/errors.hpp"
#include "rce/pipeline.hpp"

namespace rce {
namespace {

using Json = nlohmann::ordered_json;

Json cfg_to_json(const RceConfig& cfg) {
    return Json{{"p_r", cfg.p_r},
                {"p_g", cfg.p_g},
                {"area_lo", cfg.region.area_lo},
                {"area_hi", cfg.region.area_hi},
                {"aspect_lo", cfg.region.aspect_lo},
                {"aspect_hi", cfg.region.aspect_hi},
                {"max_attempts", cfg.region.max_attempts},
                {"direction", std::string(to_string(cfg.direction))}};
}

RceConfig cfg_from_json(const Json& j) {
    RceConfig cfg;
    cfg.p_r = j.at("p_r").get<double>();
    cfg.p_g = j.at("p_g").get<double>();
    cfg.region.area_lo = j.at("area_lo").get<double>();
    cfg.region.area_hi = j.at("area_hi").get<double>();
    cfg.region.aspect_lo = j.at("aspect_lo").get<double>();
    cfg.region.aspect_hi = j.at("aspect_hi").get<double>();
    cfg.region.max_attempts = j.at("max_attempts").get<unsigned>();
    cfg.direction = parse_direction(j.at("direction").get<std::string>());
    return cfg;
}

Json entry_to_json(const ManifestEntry& e) {
    Json rect = nullptr;
    if (e.record.rect) {
        const Rect& r = *e.record.rect;
        rect = Json{{"x0", r.x0()}, {"y0", r.y0()}, {"w", r.w()}, {"h", r.h()}};
    }
    Json draws = Json::array({e.record.p1});
    if (e.record.p2) draws.push_back(*e.record.p2);
    return Json{{"type", "entry"},
                {"source_path", e.source_path},
                {"pass_index", e.pass_index},
                {"output_path", e.output_path},
                {"branch", std::string(to_string(e.record.branch))},
                {"rect", rect},
                {"draws", draws},
                {"stream_seed", to_hex(e.record.stream_seed)},
                {"content_digest", to_hex(e.content_digest)}};
}

ManifestEntry entry_from_json(const Json& j) {
    ManifestEntry e;
    e.source_path = j.at("source_path").get<std::string>();
    e.pass_index = j.at("pass_index").get<unsigned>();
    e.output_path = j.at("output_path").get<std::string>();
    e.record.branch = parse_branch(j.at("branch").get<std::string>());
    const Json& rect = j.at("rect");
    if (!rect.is_null()) {
        e.record.rect = Rect(rect.at("x0").get<std::size_t>(), rect.at("y0").get<std::size_t>(),
                             rect.at("w").get<std::size_t>(), rect.at("h").get<std::size_t>());
    }
    const Json& draws = j.at("draws");
    if (draws.empty() || draws.size() > 2) throw std::invalid_argument("draws must hold one or two values");
    e.record.p1 = draws[0].get<double>();
    if (draws.size() == 2) e.record.p2 = draws[1].get<double>();
    e.record.stream_seed = from_hex(j.at("stream_seed").get<std::string>());
    e.content_digest = from_hex(j.at("content_digest").get<std::string>());
    if (e.record.rect.has_value() != (e.record.branch == Branch::Local)) {
        throw std::invalid_argument("rect must be present exactly on the local branch");
    }
    return e;
}

}  // namespace

std::string to_jsonl(const Manifest& manifest) {
    std::string out;
    const Json header{{"type", "header"},
                      {"spec_version", manifest.spec_version},
                      {"master_seed", to_hex(manifest.master_seed)},
                      {"passes", manifest.passes},
                      {"cfg", cfg_to_json(manifest.cfg)}};
    out += header.dump() + '\n';
    for (const auto& e : manifest.entries) out += entry_to_json(e).dump() + '\n';
    for (const auto& w : manifest.warnings) {
        out += Json{{"type", "warning"}, {"path", w.path}, {"message", w.message}}.dump() + '\n';
    }
    return out;
}

Manifest parse_manifest(std::string_view jsonl) {
    Manifest manifest;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const Json j = Json::parse(line);
            const std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                manifest.spec_version = j.at("spec_version").get<std::string>();
                manifest.master_seed = from_hex(j.at("master_seed").get<std::string>());
                manifest.passes = j.at("passes").get<unsigned>();
                manifest.cfg = cfg_from_json(j.at("cfg"));
                seen_header = true;
            } else if (type == "entry") {
                manifest.entries.push_back(entry_from_json(j));
            } else if (type == "warning") {
                manifest.warnings.push_back({j.at("path").get<std::string>(), j.at("message").get<std::string>()});
            } else {
                throw std::invalid_argument("unknown line type '" + type + "'");
            }
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad manifest line: ") + e.what(), line_no, 0);
        }
    }
    if (!seen_header) throw ParseError("manifest has no header line", 1, 0);
    return manifest;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    const std::string text = to_jsonl(manifest);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

}  // namespace rce
