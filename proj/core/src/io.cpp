#include "mssd/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mssd/errors.hpp"

namespace mssd {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return buf;
}

double parse_double(const std::string& tok, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(ctx + ": bad number '" + tok + "'");
    }
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

}  // namespace

std::vector<Location> parse_universe(const std::string& text, const std::string& source_name,
                                     const std::string& origin) {
    std::vector<Location> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string ctx = origin + ":" + std::to_string(lineno);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        const std::vector<std::string> toks = tokenize(line);
        if (toks.size() < 2) throw ParseError(ctx + ": expected '<id> point|polygon ...'");

        Location l;
        l.id = toks[0];
        l.source_name = source_name;

        std::size_t attr_start = 0;
        if (toks[1] == "point") {
            if (toks.size() < 4) throw ParseError(ctx + ": point needs lat lon");
            GeoPoint p{parse_double(toks[2], ctx), parse_double(toks[3], ctx)};
            if (!is_valid(p)) throw ParseError(ctx + ": coordinate out of range");
            l.region = p;
            attr_start = 4;
        } else if (toks[1] == "polygon") {
            GeoPolygon pg;
            std::size_t i = 2;
            while (i + 1 < toks.size() && toks[i].find('=') == std::string::npos &&
                   toks[i + 1].find('=') == std::string::npos) {
                GeoPoint v{parse_double(toks[i], ctx), parse_double(toks[i + 1], ctx)};
                if (!is_valid(v)) throw ParseError(ctx + ": coordinate out of range");
                pg.vertices.push_back(v);
                i += 2;
            }
            if (pg.vertices.size() < 3) throw ParseError(ctx + ": polygon needs >= 3 vertices");
            l.region = pg;
            attr_start = i;
        } else {
            throw ParseError(ctx + ": unknown geometry '" + toks[1] + "'");
        }

        for (std::size_t i = attr_start; i < toks.size(); ++i) {
            const auto eq = toks[i].find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ParseError(ctx + ": expected key=value, got '" + toks[i] + "'");
            }
            l.attributes[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
        }
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<Location> load_universe(const std::string& path, const std::string& source_name) {
    return parse_universe(read_file(path), source_name, path);
}

std::string format_universe(const std::vector<Location>& locations) {
    std::ostringstream out;
    for (const Location& l : locations) {
        out << l.id;
        if (const auto* p = std::get_if<GeoPoint>(&l.region)) {
            out << " point " << fmt_coord(p->lat) << " " << fmt_coord(p->lon);
        } else {
            out << " polygon";
            for (const GeoPoint& v : std::get<GeoPolygon>(l.region).vertices) {
                out << " " << fmt_coord(v.lat) << " " << fmt_coord(v.lon);
            }
        }
        for (const auto& [k, v] : l.attributes) out << " " << k << "=" << v;
        out << "\n";
    }
    return out.str();
}

void save_universe(const std::string& path, const std::vector<Location>& locations) {
    write_file(path, format_universe(locations));
}

namespace {

SourceProfile profile_from_json(const std::string& name, const nlohmann::json& j) {
    SourceProfile p;
    p.name = name;
    p.max_result_size = j.value("max_result_size", 50u);
    p.bandwidth_limit = j.value("bandwidth_limit", std::uint64_t{1000});
    p.bandwidth_window_s = j.value("bandwidth_window_s", std::int64_t{86400});
    p.supplemental_results = j.value("supplemental_results", false);
    p.sampling_mode = sampling_mode_from_string(j.value("sampling_mode", "nearest-first"));
    return p;
}

}  // namespace

std::map<std::string, SourceProfile> parse_profiles(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("profiles: ") + e.what());
    }
    std::map<std::string, SourceProfile> out;
    for (const auto& [name, body] : j.at("profiles").items()) {
        out[name] = profile_from_json(name, body);
    }
    return out;
}

std::map<std::string, SourceProfile> load_profiles(const std::string& path) {
    return parse_profiles(read_file(path));
}

void save_distribution(const std::string& path, const CellDistribution& dist) {
    std::ostringstream out;
    char head[160];
    std::snprintf(head, sizeof head, "# mssd-distribution origin_lat=%.9f origin_lon=%.9f cell_size_m=%.3f\n",
                  dist.origin.lat, dist.origin.lon, dist.cell_size_m);
    out << head << "row,col,probability\n";
    for (const auto& [cell, p] : dist.cells) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.12g\n", static_cast<long long>(cell.row),
                      static_cast<long long>(cell.col), p);
        out << buf;
    }
    write_file(path, out.str());
}

CellDistribution load_distribution(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty distribution file");

    CellDistribution dist;
    {
        const std::vector<std::string> toks = tokenize(line);
        if (toks.size() < 2 || toks[0] != "#" || toks[1] != "mssd-distribution") {
            throw ParseError(path + ": missing distribution header");
        }
        for (std::size_t i = 2; i < toks.size(); ++i) {
            const auto eq = toks[i].find('=');
            if (eq == std::string::npos) continue;
            const std::string key = toks[i].substr(0, eq);
            const double val = parse_double(toks[i].substr(eq + 1), path);
            if (key == "origin_lat") dist.origin.lat = val;
            if (key == "origin_lon") dist.origin.lon = val;
            if (key == "cell_size_m") dist.cell_size_m = val;
        }
    }
    std::getline(in, line);  // column header
    bool first = true;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        long long row = 0, col = 0;
        double p = 0.0;
        if (std::sscanf(line.c_str(), "%lld,%lld,%lf", &row, &col, &p) != 3) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad distribution row");
        }
        const GridCell cell{row, col};
        dist.cells[cell] = p;
        if (first) {
            dist.min_cell = dist.max_cell = cell;
            first = false;
        } else {
            dist.min_cell.row = std::min(dist.min_cell.row, cell.row);
            dist.min_cell.col = std::min(dist.min_cell.col, cell.col);
            dist.max_cell.row = std::max(dist.max_cell.row, cell.row);
            dist.max_cell.col = std::max(dist.max_cell.col, cell.col);
        }
    }
    validate(dist);
    return dist;
}

namespace {

std::string format_trace_csv(const BudgetLedger& ledger) {
    std::ostringstream out;
    out << "timestamp_s,lat,lon,radius_m,results,new_locations\n";
    for (const auto& e : ledger.entries()) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%lld,%.9f,%.9f,%.3f,%u,%u\n",
                      static_cast<long long>(e.timestamp_s), e.center.lat, e.center.lon,
                      e.radius_m, e.result_count, e.new_count);
        out << buf;
    }
    return out.str();
}

std::string format_locations_csv(const std::vector<Location>& locations) {
    std::ostringstream out;
    out << "id,lat,lon,supplemental\n";
    for (const Location& l : locations) {
        const GeoPoint p = point_of(l);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%.9f,%.9f,%d\n", l.id.c_str(), p.lat, p.lon,
                      l.supplemental ? 1 : 0);
        out << buf;
    }
    return out.str();
}

}  // namespace

void save_run(const std::string& dir, const ExtractionRun& run) {
    std::filesystem::create_directories(dir);
    write_file(dir + "/locations.csv", format_locations_csv(run.retrieved));
    write_file(dir + "/trace.csv", format_trace_csv(run.ledger));

    nlohmann::ordered_json j;
    j["source"] = run.source_name;
    j["strategy"] = to_string(run.config.strategy);
    j["r_m"] = run.config.r_m;
    j["alpha"] = run.config.alpha;
    j["eps_m"] = run.config.eps_m;
    j["min_pts"] = run.config.min_pts;
    j["r_min_m"] = run.config.r_min_m;
    j["self_seed_rounds"] = run.config.self_seed_rounds;
    j["bandwidth_limit"] = run.ledger.limit_per_window();
    j["bandwidth_window_s"] = run.ledger.window_s();
    j["requests"] = run.ledger.request_count();
    j["distinct_locations"] = run.distinct_count();
    j["initial_count"] = run.initial_count;
    j["recursion_floor_hits"] = run.recursion_floor_hits;
    j["rounds_executed"] = run.rounds_executed;
    j["universe_size"] = run.universe_size;
    j["universe_digest"] = run.universe_digest;
    j["virtual_elapsed_s"] = run.ledger.totals().elapsed_s;
    write_file(dir + "/summary.json", j.dump(2) + "\n");
}

ExtractionRun load_run(const std::string& dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(dir + "/summary.json"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(dir + "/summary.json: " + std::string(e.what()));
    }

    ExtractionRun run;
    run.source_name = j.at("source").get<std::string>();
    run.config.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    run.config.r_m = j.at("r_m").get<double>();
    run.config.alpha = j.at("alpha").get<double>();
    run.config.eps_m = j.at("eps_m").get<double>();
    run.config.min_pts = j.at("min_pts").get<int>();
    run.config.r_min_m = j.at("r_min_m").get<double>();
    run.config.self_seed_rounds = j.at("self_seed_rounds").get<int>();
    run.initial_count = j.at("initial_count").get<std::size_t>();
    run.recursion_floor_hits = j.at("recursion_floor_hits").get<std::uint64_t>();
    run.rounds_executed = j.at("rounds_executed").get<int>();
    run.universe_size = j.at("universe_size").get<std::size_t>();
    run.universe_digest = j.at("universe_digest").get<std::uint64_t>();

    run.ledger = BudgetLedger(run.source_name, j.at("bandwidth_limit").get<std::uint64_t>(),
                              j.at("bandwidth_window_s").get<std::int64_t>());
    {
        std::istringstream in(read_file(dir + "/trace.csv"));
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            long long ts = 0;
            double lat = 0, lon = 0, radius = 0;
            unsigned results = 0, news = 0;
            if (std::sscanf(line.c_str(), "%lld,%lf,%lf,%lf,%u,%u", &ts, &lat, &lon, &radius,
                            &results, &news) != 6) {
                throw ParseError(dir + "/trace.csv: bad row '" + line + "'");
            }
            run.ledger.record_request(GeoPoint{lat, lon}, radius, results, news);
        }
    }
    {
        std::istringstream in(read_file(dir + "/locations.csv"));
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const auto c3 = line.find(',', c2 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos) {
                throw ParseError(dir + "/locations.csv: bad row '" + line + "'");
            }
            Location l;
            l.id = line.substr(0, c1);
            l.source_name = run.source_name;
            l.region = GeoPoint{parse_double(line.substr(c1 + 1, c2 - c1 - 1), dir),
                                parse_double(line.substr(c2 + 1, c3 - c2 - 1), dir)};
            l.supplemental = line.substr(c3 + 1) == "1";
            run.retrieved.push_back(std::move(l));
        }
    }
    return run;
}

std::string format_metrics_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    out << "source,strategy,sweep_axis,alpha,r_m,requests,distinct_locations,coverage,"
           "pct_requests_vs_reference,pct_locations_vs_reference,virtual_elapsed_s\n";
    for (const MetricsRow& r : rows) {
        char buf[384];
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6g,%.6g,%llu,%llu,%.6f,%.6f,%.6f,%lld\n",
                      r.metrics.source_name.c_str(), r.metrics.strategy.c_str(),
                      r.sweep_axis.c_str(), r.alpha, r.r_m,
                      static_cast<unsigned long long>(r.metrics.requests),
                      static_cast<unsigned long long>(r.metrics.distinct_locations),
                      r.metrics.coverage, r.metrics.pct_requests_vs_reference,
                      r.metrics.pct_locations_vs_reference,
                      static_cast<long long>(r.metrics.virtual_elapsed_s));
        out << buf;
    }
    return out.str();
}

void save_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows) {
    write_file(path, format_metrics_csv(rows));
}

std::string format_plot_csv(const std::vector<ExtractionRun>& runs) {
    std::ostringstream out;
    out << "strategy,request_index,cumulative_distinct\n";
    for (const ExtractionRun& run : runs) {
        const std::vector<std::size_t> cum = cumulative_distinct(run);
        for (std::size_t i = 0; i < cum.size(); ++i) {
            out << to_string(run.config.strategy) << "," << (i + 1) << "," << cum[i] << "\n";
        }
    }
    return out.str();
}

}  // namespace mssd
