#include "expsum/serialize.hpp"

#include <chrono>
#include <fstream>
#include <nlohmann/json.hpp>

#include "expsum/errors.hpp"
#include "expsum/version.hpp"

namespace expsum {

namespace {

std::string real_str(const Real& x) { return x.str(0, std::ios_base::scientific); }

std::string iso_utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    return nlohmann::json{{"command", m.command}, {"target", m.target},
                          {"M", m.M},             {"n_inf", m.n_inf},
                          {"A", m.A},             {"B", m.B},
                          {"digits", m.digits},   {"input", m.input_path},
                          {"output", m.output_path}, {"timestamp", m.timestamp},
                          {"version", m.version}};
}

}  // namespace

RunManifest make_manifest(const std::string& command, const std::string& target,
                          const ApproxConfig& cfg, const std::string& input_path,
                          const std::string& output_path) {
    RunManifest m;
    m.command = command;
    m.target = target;
    m.M = cfg.M;
    m.n_inf = cfg.n_inf;
    m.A = real_str(cfg.A);
    m.B = real_str(cfg.B);
    m.digits = cfg.digits;
    m.input_path = input_path;
    m.output_path = output_path;
    m.timestamp = iso_utc_now();
    m.version = library_version;
    return m;
}

nlohmann::json expsum_to_json(const ExpSum& s, const ApproxConfig& cfg,
                              const RunManifest& manifest) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : s.terms) {
        terms.push_back({{"c_re", real_str(t.c.re)},
                         {"c_im", real_str(t.c.im)},
                         {"l_re", real_str(t.lambda.re)},
                         {"l_im", real_str(t.lambda.im)}});
    }
    nlohmann::json j;
    j["M"] = s.M();
    j["digits"] = cfg.digits;
    j["config"] = {{"M", cfg.M}, {"n_inf", cfg.n_inf}, {"A", real_str(cfg.A)}, {"B", real_str(cfg.B)}};
    j["terms"] = std::move(terms);
    j["manifest"] = manifest_to_json(manifest);
    return j;
}

LoadedExpSum expsum_from_json(const nlohmann::json& j) {
    LoadedExpSum out;
    try {
        out.config.digits = j.at("digits").get<int>();
        const auto& cfg = j.at("config");
        out.config.M = cfg.at("M").get<int>();
        out.config.n_inf = cfg.at("n_inf").get<int>();
        out.config.A = Real(cfg.at("A").get<std::string>());
        out.config.B = Real(cfg.at("B").get<std::string>());
        for (const auto& t : j.at("terms")) {
            ExpSumTerm term;
            term.c = Complex(Real(t.at("c_re").get<std::string>()),
                             Real(t.at("c_im").get<std::string>()));
            term.lambda = Complex(Real(t.at("l_re").get<std::string>()),
                                  Real(t.at("l_im").get<std::string>()));
            out.sum.terms.push_back(std::move(term));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("coefficient file: ") + e.what());
    }
    return out;
}

void save_expsum(const std::string& path, const ExpSum& s, const ApproxConfig& cfg,
                 const RunManifest& manifest) {
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot open for writing: " + path);
    f << expsum_to_json(s, cfg, manifest).dump(1) << "\n";
}

LoadedExpSum load_expsum(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot open coefficient file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("coefficient file " + path + ": " + e.what());
    }
    return expsum_from_json(j);
}

std::string manifest_csv_header(const RunManifest& manifest) {
    return "# manifest: " + manifest_to_json(manifest).dump();
}

}  // namespace expsum
