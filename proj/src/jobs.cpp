#include "copfrac/jobs.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace copfrac {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw parameter_error(path + ": " + what);
}

double require_number(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) fail(path + "." + key, "expected a number");
    return j[key].get<double>();
}

Margin parse_margin(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("family")) fail(path, "expected a margin object");
    const std::string family = j["family"].get<std::string>();
    if (family == "exponential") {
        return Margin::exponential(require_number(j, path, "rate"));
    }
    if (family == "uniform") {
        return Margin::uniform(require_number(j, path, "a"), require_number(j, path, "b"));
    }
    if (family == "power") {
        if (!j.contains("base")) fail(path + ".base", "power margin needs a base margin");
        Margin base = parse_margin(j["base"], path + ".base");
        const double gamma = require_number(j, path, "gamma");
        const std::string mode = j.value("mode", "prhr");
        if (mode != "prhr" && mode != "phr") fail(path + ".mode", "expected \"prhr\" or \"phr\"");
        return Margin::power(std::move(base), gamma,
                             mode == "prhr" ? PowerMode::PRHR : PowerMode::PHR);
    }
    fail(path + ".family", "unknown margin family: " + family);
}

MarginVector parse_margins(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a non-empty margin array");
    MarginVector out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_margin(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

CopulaSpec parse_copula(const json& j, const std::string& path, int default_dim) {
    if (!j.is_object() || !j.contains("family")) fail(path, "expected a copula object");
    const std::string family = j["family"].get<std::string>();
    const double theta = j.value("theta", 0.0);
    const int dim = j.value("dim", default_dim);
    try {
        return CopulaSpec(copula_family_from_string(family), theta, dim);
    } catch (const parameter_error& e) {
        fail(path, e.what());
    }
}

IntegrationMethod parse_method(const std::string& name, const std::string& path) {
    if (name == "gauss_legendre") return IntegrationMethod::GaussLegendreTensor;
    if (name == "monte_carlo") return IntegrationMethod::MonteCarlo;
    if (name == "adaptive") return IntegrationMethod::AdaptiveDoubling;
    fail(path, "unknown integration method: " + name);
}

IntegrationConfig parse_integration(const json& j, const std::string& path, int dim) {
    IntegrationConfig cfg = default_config_for_dim(dim);
    if (j.is_null()) return cfg;
    if (!j.is_object()) fail(path, "expected an integration object");
    if (j.contains("method")) cfg.method = parse_method(j["method"].get<std::string>(), path + ".method");
    if (j.contains("nodes")) cfg.nodes_per_axis = j["nodes"].get<int>();
    if (j.contains("samples")) cfg.mc_samples = j["samples"].get<std::int64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("rel_tolerance")) cfg.rel_tolerance = j["rel_tolerance"].get<double>();
    if (j.contains("clamp_epsilon")) cfg.clamp_epsilon = j["clamp_epsilon"].get<double>();
    try {
        cfg.validate();
    } catch (const parameter_error& e) {
        fail(path, e.what());
    }
    return cfg;
}

MeasureJob parse_job(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a job object");
    if (!j.contains("kind")) fail(path + ".kind", "missing measure kind");
    MeasureKind kind;
    try {
        kind = measure_kind_from_string(j["kind"].get<std::string>());
    } catch (const parameter_error& e) {
        fail(path + ".kind", e.what());
    }
    if (!j.contains("eta") || !j["eta"].is_number()) fail(path + ".eta", "expected a number");

    MarginVector tm, rm;
    if (j.contains("true_margins")) tm = parse_margins(j["true_margins"], path + ".true_margins");
    if (j.contains("reference_margins")) {
        rm = parse_margins(j["reference_margins"], path + ".reference_margins");
    }

    const bool univariate = kind == MeasureKind::FCRI || kind == MeasureKind::FCPI;
    const bool entropy = kind == MeasureKind::CCFE || kind == MeasureKind::SCFE;
    int dim = 2;
    if (!tm.empty()) dim = static_cast<int>(tm.size());

    std::optional<CopulaSpec> cx, cy;
    if (j.contains("true_copula")) cx = parse_copula(j["true_copula"], path + ".true_copula", dim);
    if (j.contains("reference_copula")) {
        cy = parse_copula(j["reference_copula"], path + ".reference_copula", dim);
    }
    if (!univariate && !cx) fail(path + ".true_copula", "missing true copula");
    if (!univariate && !entropy && !cy) fail(path + ".reference_copula", "missing reference copula");
    if (entropy) cy.reset(); // entropy kinds ignore the reference fields
    if (univariate) {
        cx.reset();
        cy.reset();
    }

    const int cfg_dim = univariate ? 1 : (cx ? cx->dim() : dim);
    FractionalOrder eta(0.5);
    try {
        eta = FractionalOrder(j["eta"].get<double>());
    } catch (const parameter_error& e) {
        fail(path + ".eta", e.what());
    }

    MeasureJob job{kind,
                   std::move(cx),
                   std::move(cy),
                   std::move(tm),
                   std::move(rm),
                   j.value("true_is_survival", false),
                   j.value("reference_is_survival", false),
                   eta,
                   parse_integration(j.contains("integration") ? j["integration"] : json(),
                                     path + ".integration", cfg_dim)};
    try {
        validate_job(job);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return job;
}

std::vector<double> parse_sweep_values(const json& j, const std::string& path) {
    if (j.contains("values")) {
        const auto& vals = j["values"];
        if (!vals.is_array() || vals.empty()) fail(path + ".values", "expected a non-empty array");
        std::vector<double> out;
        for (const auto& v : vals) out.push_back(v.get<double>());
        return out;
    }
    if (j.contains("from") && j.contains("to") && j.contains("steps")) {
        const double from = j["from"].get<double>();
        const double to = j["to"].get<double>();
        const int steps = j["steps"].get<int>();
        if (steps < 1) fail(path + ".steps", "steps must be >= 1");
        std::vector<double> out;
        if (steps == 1) {
            out.push_back(from);
        } else {
            for (int i = 0; i < steps; ++i) {
                out.push_back(from + (to - from) * i / (steps - 1.0));
            }
        }
        return out;
    }
    fail(path, "sweep parameter needs either values or {from,to,steps}");
}

std::vector<SweepParameter> parse_sweep(const json& j, const std::string& path) {
    std::vector<SweepParameter> out;
    auto parse_one = [&](const json& p, const std::string& pp) {
        if (!p.is_object() || !p.contains("parameter")) {
            fail(pp, "expected {parameter, values|from/to/steps}");
        }
        out.push_back(SweepParameter{p["parameter"].get<std::string>(),
                                     parse_sweep_values(p, pp)});
    };
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            parse_one(j[i], path + "[" + std::to_string(i) + "]");
        }
    } else {
        parse_one(j, path);
    }
    return out;
}

// "true_copula.theta" / "reference_margins[0].rate" -> nlohmann json_pointer
std::string to_json_pointer(const std::string& dotted) {
    std::string out;
    std::string token;
    auto flush = [&]() {
        if (!token.empty()) {
            out += "/" + token;
            token.clear();
        }
    };
    for (char c : dotted) {
        if (c == '.') {
            flush();
        } else if (c == '[') {
            flush();
            out += "/";
        } else if (c == ']') {
            // index characters already appended
        } else {
            if (c != '/') token += c;
        }
    }
    flush();
    return out;
}

json patch_job_json(const json& base, const std::vector<SweepParameter>& params,
                    const std::vector<std::size_t>& idx) {
    json patched = base;
    for (std::size_t p = 0; p < params.size(); ++p) {
        const auto ptr = json::json_pointer(to_json_pointer(params[p].path));
        patched[ptr] = params[p].values[idx[p]];
    }
    return patched;
}

// Index-sliced parallel map with a bounded worker pool; results land in
// their slot, so output order is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(worker_threads(), static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

JobFile parse_job_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parameter_error(std::string("job file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw parameter_error("job file must be a JSON object");
    JobFile file;
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1) {
        throw parameter_error("schema_version: expected 1");
    }
    if (!j.contains("jobs") || !j["jobs"].is_array() || j["jobs"].empty()) {
        throw parameter_error("jobs: expected a non-empty array");
    }
    for (std::size_t i = 0; i < j["jobs"].size(); ++i) {
        const std::string path = "jobs[" + std::to_string(i) + "]";
        file.jobs.push_back(parse_job(j["jobs"][i], path));
        file.job_json.push_back(j["jobs"][i].dump());
    }
    if (j.contains("sweep")) file.sweep = parse_sweep(j["sweep"], "sweep");
    if (j.contains("output")) {
        const auto& o = j["output"];
        file.output.format = o.value("format", "csv");
        file.output.path = o.value("path", "");
        if (file.output.format != "csv" && file.output.format != "json") {
            throw parameter_error("output.format: expected \"csv\" or \"json\"");
        }
    }
    // validate every sweep cell for every job before anything runs
    if (!file.sweep.empty()) {
        for (std::size_t ji = 0; ji < file.jobs.size(); ++ji) {
            const json base = json::parse(file.job_json[ji]);
            std::vector<std::size_t> idx(file.sweep.size(), 0);
            bool done = false;
            while (!done) {
                const std::string path = "jobs[" + std::to_string(ji) + "] sweep cell";
                json patched;
                try {
                    patched = patch_job_json(base, file.sweep, idx);
                } catch (const json::exception& e) {
                    fail(path, std::string("bad sweep parameter path: ") + e.what());
                }
                parse_job(patched, path);
                done = true;
                for (std::size_t p = file.sweep.size(); p-- > 0;) {
                    if (++idx[p] < file.sweep[p].values.size()) {
                        done = false;
                        break;
                    }
                    idx[p] = 0;
                }
            }
        }
    }
    return file;
}

JobFile load_job_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open job file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_job_file(ss.str());
}

std::vector<SweepRecord> run_measures(const JobFile& file) {
    std::vector<SweepRecord> records(file.jobs.size());
    parallel_for(file.jobs.size(), [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        SweepRecord rec;
        rec.kind = std::string(to_string(file.jobs[i].kind));
        rec.result = evaluate(file.jobs[i]);
        rec.wall_time_ms = elapsed_ms(t0);
        records[i] = std::move(rec);
    });
    return records;
}

std::vector<SweepRecord> run_sweep(const JobFile& file) {
    if (file.sweep.empty()) throw parameter_error("job file has no sweep block");
    std::vector<std::size_t> shape;
    std::size_t cells = 1;
    for (const auto& p : file.sweep) {
        shape.push_back(p.values.size());
        cells *= p.values.size();
    }

    struct Cell {
        MeasureJob job;
        std::string kind;
        std::vector<double> values;
    };
    std::vector<Cell> work;
    work.reserve(cells * file.jobs.size());
    for (std::size_t ji = 0; ji < file.jobs.size(); ++ji) {
        const json base = json::parse(file.job_json[ji]);
        std::vector<std::size_t> idx(file.sweep.size(), 0);
        bool done = false;
        while (!done) {
            const json patched = patch_job_json(base, file.sweep, idx);
            MeasureJob job = parse_job(patched, "sweep cell");
            std::vector<double> values(file.sweep.size());
            for (std::size_t p = 0; p < file.sweep.size(); ++p) {
                values[p] = file.sweep[p].values[idx[p]];
            }
            work.push_back(Cell{std::move(job), std::string(to_string(file.jobs[ji].kind)),
                                std::move(values)});
            done = true;
            for (std::size_t p = file.sweep.size(); p-- > 0;) {
                if (++idx[p] < shape[p]) {
                    done = false;
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    std::vector<SweepRecord> records(work.size());
    parallel_for(work.size(), [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        SweepRecord rec;
        rec.kind = work[i].kind;
        rec.parameter_values = work[i].values;
        rec.result = evaluate(work[i].job);
        rec.wall_time_ms = elapsed_ms(t0);
        records[i] = std::move(rec);
    });
    return records;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string sweep_column_name(const std::string& path) {
    // last path component reads better as a column label
    std::string name = path;
    std::replace(name.begin(), name.end(), '[', '_');
    std::erase(name, ']');
    std::replace(name.begin(), name.end(), '.', '_');
    return name;
}

} // namespace

std::string to_csv(const JobFile& file, const std::vector<SweepRecord>& records,
                   bool include_timing) {
    std::ostringstream out;
    const bool kind_column = file.jobs.size() > 1;
    bool first = true;
    if (kind_column) {
        out << "kind";
        first = false;
    }
    for (const auto& p : file.sweep) {
        out << (first ? "" : ",") << sweep_column_name(p.path);
        first = false;
    }
    out << (first ? "" : ",") << "value,error_estimate,evaluations";
    if (include_timing) out << ",wall_time_ms";
    out << "\n";
    for (const auto& rec : records) {
        first = true;
        if (kind_column) {
            out << rec.kind;
            first = false;
        }
        for (double v : rec.parameter_values) {
            out << (first ? "" : ",") << format_double(v);
            first = false;
        }
        out << (first ? "" : ",") << format_double(rec.result.value) << ","
            << format_double(rec.result.error_estimate) << "," << rec.result.evaluations;
        if (include_timing) out << "," << format_double(rec.wall_time_ms);
        out << "\n";
    }
    for (const auto& line : trend_summary(file, records)) out << line << "\n";
    return out.str();
}

std::string to_jsonl(const JobFile& file, const std::vector<SweepRecord>& records,
                     bool include_timing) {
    std::ostringstream out;
    for (const auto& rec : records) {
        json j;
        j["kind"] = rec.kind;
        for (std::size_t p = 0; p < rec.parameter_values.size(); ++p) {
            j[sweep_column_name(file.sweep[p].path)] = rec.parameter_values[p];
        }
        j["value"] = rec.result.value;
        j["error_estimate"] = rec.result.error_estimate;
        j["evaluations"] = rec.result.evaluations;
        if (include_timing) j["wall_time_ms"] = rec.wall_time_ms;
        out << j.dump() << "\n";
    }
    for (const auto& line : trend_summary(file, records)) out << line << "\n";
    return out.str();
}

std::vector<std::string> trend_summary(const JobFile& file,
                                       const std::vector<SweepRecord>& records) {
    std::vector<std::string> out;
    if (file.sweep.empty() || records.empty()) return out;
    std::vector<std::size_t> shape;
    std::size_t cells = 1;
    for (const auto& p : file.sweep) {
        shape.push_back(p.values.size());
        cells *= p.values.size();
    }
    if (records.size() != cells * file.jobs.size()) return out;

    std::vector<std::size_t> strides(shape.size(), 1);
    for (std::size_t p = shape.size(); p-- > 1;) {
        strides[p - 1] = strides[p] * shape[p];
    }
    constexpr double kSlack = 1e-12;
    for (std::size_t ji = 0; ji < file.jobs.size(); ++ji) {
        const std::size_t off = ji * cells;
        for (std::size_t p = 0; p < shape.size(); ++p) {
            bool nondecreasing = true;
            bool nonincreasing = true;
            for (std::size_t flat = 0; flat < cells; ++flat) {
                const std::size_t along = (flat / strides[p]) % shape[p];
                if (along + 1 == shape[p]) continue;
                const double here = records[off + flat].result.value;
                const double next = records[off + flat + strides[p]].result.value;
                if (next < here - kSlack) nondecreasing = false;
                if (next > here + kSlack) nonincreasing = false;
            }
            const char* direction = nondecreasing && nonincreasing ? "constant"
                                    : nondecreasing               ? "nondecreasing"
                                    : nonincreasing               ? "nonincreasing"
                                                                  : "mixed";
            out.push_back("# trend kind=" + records[off].kind +
                          " parameter=" + sweep_column_name(file.sweep[p].path) +
                          " direction=" + direction);
        }
    }
    return out;
}

int worker_threads() {
    const char* env = std::getenv("COPFRAC_THREADS");
    if (env != nullptr) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace copfrac
