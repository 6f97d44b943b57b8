#include "haargreedy/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace haargreedy {

Json expansion_to_json(const HaarExpansion& f) {
    Json coeffs = Json::array();
    for (const auto& [key, value] : f.coefficients()) {
        coeffs.push_back(Json{{"cube", key.cube.to_string()},
                              {"j", key.index},
                              {"value", fraction_string(value)}});
    }
    return Json{{"dim", f.dim()},
                {"constant", fraction_string(f.constant())},
                {"coeffs", std::move(coeffs)}};
}

HaarExpansion expansion_from_json(const Json& object) {
    HaarExpansion f(object.at("dim").get<int>());
    f.set_constant(rational_from_string(object.at("constant").get<std::string>()));
    for (const Json& entry : object.at("coeffs")) {
        DyadicCube cube = DyadicCube::parse(entry.at("cube").get<std::string>());
        Rational value = rational_from_string(entry.at("value").get<std::string>());
        if (value == 0) throw std::invalid_argument("zero coefficient in expansion file");
        f.set_coefficient(cube, entry.at("j").get<int>(), value);
    }
    return f;
}

Json grid_to_json(const std::vector<Rational>& grid, int dim, int level) {
    Json values = Json::array();
    for (const Rational& value : grid) values.push_back(fraction_string(value));
    return Json{{"dim", dim}, {"level", level}, {"values", std::move(values)}};
}

std::vector<Rational> grid_from_json(const Json& object, int& dim, int& level) {
    dim = object.at("dim").get<int>();
    level = object.at("level").get<int>();
    std::vector<Rational> grid;
    for (const Json& value : object.at("values")) {
        grid.push_back(rational_from_string(value.get<std::string>()));
    }
    return grid;
}

namespace {

void put_rational(Json& object, const std::string& name, const Rational& value) {
    object[name] = fraction_string(value);
    object[name + "_decimal"] = decimal_string(value);
}

}  // namespace

std::string trace_to_jsonl(const GreedyTrace& trace) {
    std::ostringstream out;
    Json header{{"record", "header"},
                {"dim", trace.input.dim()},
                {"s", fraction_string(trace.params.s)},
                {"t", fraction_string(trace.params.t)},
                {"variant", trace.params.variant == StepRule::RuleA ? "a" : "b"},
                {"include_constant", trace.params.include_constant},
                {"boundary_regime", trace.params.boundary_regime()},
                {"spectrum_size", trace.input.spectrum_size()},
                {"steps", trace.steps.size()},
                {"terminated", trace.terminated}};
    put_rational(header, "input_norm", trace.input_norm);
    out << header.dump() << "\n";
    for (const GreedyStepRecord& step : trace.steps) {
        Json line{{"record", "step"},
                  {"m", step.m},
                  {"constant_step", step.constant_step},
                  {"delta", step.delta.to_string()},
                  {"j", step.j},
                  {"delta_tilde", step.delta_tilde.to_string()},
                  {"i", step.i}};
        put_rational(line, "removed_value", step.removed_value);
        put_rational(line, "approximant_norm", step.approximant_norm);
        put_rational(line, "residual_norm", step.residual_norm);
        out << line.dump() << "\n";
    }
    return out.str();
}

std::string trace_to_csv(const GreedyTrace& trace) {
    std::ostringstream out;
    out << "m,residual_norm,approximant_norm,ratio\n";
    for (const GreedyStepRecord& step : trace.steps) {
        Rational ratio = trace.input_norm == 0
                             ? Rational(0)
                             : Rational(step.approximant_norm / trace.input_norm);
        out << step.m << ',' << decimal_string(step.residual_norm) << ','
            << decimal_string(step.approximant_norm) << ',' << decimal_string(ratio)
            << "\n";
    }
    return out.str();
}

HaarExpansion read_expansion_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open expansion file: " + path);
    Json object = Json::parse(in);
    return expansion_from_json(object);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing: " + path);
}

}  // namespace haargreedy
