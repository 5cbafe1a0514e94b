#include "resmem/report.hpp"

#include "resmem/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace resmem {

namespace {

const char* kHeader = "experiment,driver,metric,tau,value,g,epsilon,eta_f,d_e,n_narma,rho,seed";

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt_double(double v)
{
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_long(long v)
{
    return v < 0 ? "" : std::to_string(v);
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::string to_csv(const std::vector<MetricRow>& rows)
{
    std::ostringstream out;
    out << kHeader << "\n";
    for (const MetricRow& r : rows) {
        out << csv_escape(r.experiment) << ',' << csv_escape(r.driver) << ','
            << csv_escape(r.metric) << ',' << fmt_long(r.tau) << ',' << fmt_double(r.value) << ','
            << fmt_double(r.g) << ',' << fmt_double(r.epsilon) << ',' << fmt_double(r.eta_f)
            << ',' << fmt_long(r.d_e) << ',' << fmt_long(r.n_narma) << ',' << fmt_double(r.rho)
            << ',' << r.seed_label() << "\n";
    }
    return out.str();
}

void write_csv(const std::vector<MetricRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input_error("cannot open " + path + " for writing");
    out << to_csv(rows);
}

std::vector<MetricRow> read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw invalid_input_error("cannot open " + path);
    std::vector<MetricRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 12) throw invalid_input_error("malformed CSV row in " + path);
        MetricRow r;
        r.experiment = f[0];
        r.driver = f[1];
        r.metric = f[2];
        r.tau = f[3].empty() ? -1 : std::stol(f[3]);
        r.value = f[4].empty() ? std::nan("") : std::stod(f[4]);
        r.g = f[5].empty() ? std::nan("") : std::stod(f[5]);
        r.epsilon = f[6].empty() ? std::nan("") : std::stod(f[6]);
        r.eta_f = f[7].empty() ? std::nan("") : std::stod(f[7]);
        r.d_e = f[8].empty() ? -1 : std::stoi(f[8]);
        r.n_narma = f[9].empty() ? -1 : std::stoi(f[9]);
        r.rho = f[10].empty() ? std::nan("") : std::stod(f[10]);
        if (f[11] == "mean") {
            r.is_mean = true;
        } else if (!f[11].empty()) {
            r.seed = std::stol(f[11]);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace resmem
