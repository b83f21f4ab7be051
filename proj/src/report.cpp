#include "polyuni/report.hpp"

#include <cmath>
#include <cstdio>

#include "polyuni/dsl.hpp"

namespace polyuni {

namespace {

void emit(const Json& j, std::string& out, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            emit(it.value(), out, depth + 1);
        }
        out += "\n" + close + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // numeric arrays stay on one line
        bool flat = true;
        for (const auto& e : j) flat = flat && e.is_primitive();
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += flat ? ", " : ",\n";
            first = false;
            if (!flat) out += pad;
            emit(e, out, depth + 1);
        }
        out += flat ? "]" : "\n" + close + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        std::string s = format_real(v);
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        out += s;
        return;
    }
    default:
        out += j.dump();
    }
}

}  // namespace

std::string dump_json(const Json& j)
{
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

std::string csv_quote(const std::string& cell)
{
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string to_csv(const CsvTable& t)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_quote(row[i]);
        out += "\n";
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list_json(const std::vector<Complex>& v)
{
    Json a = Json::array();
    for (auto z : v) a.push_back(complex_json(z));
    return a;
}

Json selection_json(const SubsequenceSelection& s)
{
    Json perm = Json::array();
    for (auto p : s.permutation) perm.push_back(p + 1);
    Json head = Json::array();
    for (std::size_t i = 0; i < s.indices.size() && i < 20; ++i) head.push_back(s.indices[i]);
    return Json{{"permutation", perm},
                {"limit_angles", s.limit_angles},
                {"lambda", complex_list_json(s.lambda)},
                {"gamma", complex_list_json(s.gamma)},
                {"horizon", s.horizon},
                {"angle_tol", s.angle_tol},
                {"selected_count", s.indices.size()},
                {"selected_head", head}};
}

Json stage_json(const StageRecord& r)
{
    return Json{{"stage", r.stage},
                {"index", r.index},
                {"target_corrector_index", r.projected_target.index},
                {"factor_corrector_index", r.factor.index},
                {"projection_error", r.projection_error},
                {"stage_error", r.stage_error},
                {"pullback_deviation", r.pullback_deviation},
                {"roundtrip_error", r.roundtrip_error},
                {"prior_interference", r.prior_interference},
                {"retro_interference", r.retro_interference},
                {"escalations", r.escalations},
                {"projected_target", to_dsl(r.projected_target.product)},
                {"factor", to_dsl(r.factor.product)}};
}

Json error_json(ErrorCode code, const std::string& message)
{
    return Json{{"code", std::string(to_string(code))}, {"message", message}};
}

CsvTable stages_table(const std::vector<StageRecord>& stages)
{
    CsvTable t{{"stage", "index", "target_corrector_index", "factor_corrector_index", "projection_error",
                "stage_error", "pullback_deviation", "roundtrip_error", "max_prior_interference",
                "max_retro_interference", "escalations"},
               {}};
    auto mx = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    };
    for (const auto& r : stages)
        t.add({std::to_string(r.stage), std::to_string(r.index), std::to_string(r.projected_target.index),
               std::to_string(r.factor.index), format_real(r.projection_error), format_real(r.stage_error),
               format_real(r.pullback_deviation), format_real(r.roundtrip_error), format_real(mx(r.prior_interference)),
               format_real(mx(r.retro_interference)), std::to_string(r.escalations)});
    return t;
}

CsvTable verification_table(const std::vector<std::string>& names, const std::vector<OrbitEntry>& entries)
{
    CsvTable t{{"target", "index", "value"}, {}};
    for (std::size_t i = 0; i < entries.size(); ++i)
        t.add({i < names.size() ? names[i] : std::to_string(i + 1), std::to_string(entries[i].index),
               format_real(entries[i].value)});
    return t;
}

}  // namespace polyuni
