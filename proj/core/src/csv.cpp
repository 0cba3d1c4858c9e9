#include "nsrl/csv.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "nsrl/errors.hpp"

namespace nsrl {

namespace {

void append_double(std::string& out, double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double to_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw Error("bad numeric CSV field: " + s);
    }
}

long long to_ll(const std::string& s) {
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw Error("bad integer CSV field: " + s);
    }
}

// Yields data lines, skipping the header and a trailing newline.
std::vector<std::string> data_lines(const std::string& text, const std::string& header) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            if (line != header) throw Error("unexpected CSV header: " + line);
            first = false;
            continue;
        }
        if (!line.empty()) lines.push_back(line);
    }
    if (first) throw Error("empty CSV document");
    return lines;
}

} // namespace

std::string steps_csv(const RunRecord& rec) {
    std::string out = "t,s,a,r,episode,phase\n";
    for (const auto& row : rec.steps) {
        out += std::to_string(row.t);
        out += ',';
        out += std::to_string(row.s);
        out += ',';
        out += std::to_string(row.a);
        out += ',';
        append_double(out, row.r);
        out += ',';
        out += std::to_string(row.episode);
        out += ',';
        out += std::to_string(row.phase);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<RunRecord>& runs) {
    std::string out = "algorithm,T,seed,regret,episodes,phases,runtime_ms\n";
    for (const auto& rec : runs) {
        out += rec.algorithm;
        out += ',';
        out += std::to_string(rec.T);
        out += ',';
        out += std::to_string(rec.seed);
        out += ',';
        append_double(out, rec.regret);
        out += ',';
        out += std::to_string(rec.episodes);
        out += ',';
        out += std::to_string(rec.phases);
        out += ',';
        append_double(out, rec.runtime_ms);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepSummary& summary) {
    std::string out = "algorithm,T,mean_regret,std_regret,n_seeds\n";
    for (const auto& cell : summary.cells) {
        out += cell.algorithm;
        out += ',';
        out += std::to_string(cell.T);
        out += ',';
        append_double(out, cell.mean_regret);
        out += ',';
        append_double(out, cell.std_regret);
        out += ',';
        out += std::to_string(cell.n_seeds);
        out += '\n';
    }
    return out;
}

std::string slope_csv(const SweepSummary& summary) {
    std::string out = "algorithm,slope,residual\n";
    for (const auto& [name, fit] : summary.slopes) {
        out += name;
        out += ',';
        if (fit) {
            append_double(out, fit->slope);
            out += ',';
            append_double(out, fit->residual);
        } else {
            out += "absent,absent";
        }
        out += '\n';
    }
    return out;
}

std::string diagnostics_csv(const RunRecord& rec) {
    std::string out = "t,episode,phase,g,span_h,evi_iterations\n";
    for (const auto& d : rec.diagnostics) {
        out += std::to_string(d.t);
        out += ',';
        out += std::to_string(d.episode);
        out += ',';
        out += std::to_string(d.phase);
        out += ',';
        append_double(out, d.gain);
        out += ',';
        append_double(out, d.bias_span);
        out += ',';
        out += std::to_string(d.evi_iterations);
        out += '\n';
    }
    return out;
}

std::vector<StepRow> parse_steps_csv(const std::string& text) {
    std::vector<StepRow> rows;
    for (const auto& line : data_lines(text, "t,s,a,r,episode,phase")) {
        const auto f = split_line(line);
        if (f.size() != 6) throw Error("steps CSV row has wrong arity: " + line);
        StepRow row;
        row.t = to_ll(f[0]);
        row.s = static_cast<int>(to_ll(f[1]));
        row.a = static_cast<int>(to_ll(f[2]));
        row.r = to_double(f[3]);
        row.episode = to_ll(f[4]);
        row.phase = to_ll(f[5]);
        rows.push_back(row);
    }
    return rows;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
    std::vector<SummaryRow> rows;
    for (const auto& line :
         data_lines(text, "algorithm,T,seed,regret,episodes,phases,runtime_ms")) {
        const auto f = split_line(line);
        if (f.size() != 7) throw Error("summary CSV row has wrong arity: " + line);
        SummaryRow row;
        row.algorithm = f[0];
        row.T = to_ll(f[1]);
        row.seed = static_cast<std::uint64_t>(to_ll(f[2]));
        row.regret = to_double(f[3]);
        row.episodes = to_ll(f[4]);
        row.phases = to_ll(f[5]);
        row.runtime_ms = to_double(f[6]);
        rows.push_back(row);
    }
    return rows;
}

} // namespace nsrl
