#include "tensorkit/tensor_io.hpp"

#include <fstream>

namespace tk {

nlohmann::json tensor_to_json(const DenseTensor& t) {
    std::string var;
    for (Variance v : t.variance()) var += (v == Variance::contra) ? '^' : '_';
    return {{"dim", t.dim()},
            {"variance", var},
            {"weight", t.weight()},
            {"components", t.components()}};
}

DenseTensor tensor_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("variance") ||
        !j.contains("components"))
        throw ShapeError("tensor json: need fields dim, variance, components");

    int dim = j.at("dim").get<int>();
    std::string var = j.at("variance").get<std::string>();
    std::vector<Variance> variance;
    for (char c : var) {
        if (c == '^')
            variance.push_back(Variance::contra);
        else if (c == '_')
            variance.push_back(Variance::co);
        else
            throw ShapeError(std::string("tensor json: bad variance character '") + c + "'");
    }
    int weight = j.value("weight", 0);
    std::vector<double> comp = j.at("components").get<std::vector<double>>();
    return DenseTensor(dim, std::move(variance), std::move(comp), weight);
}

DenseTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ShapeError("cannot open tensor file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ShapeError("malformed json in " + path + ": " + e.what());
    }
    return tensor_from_json(j);
}

void save_tensor(const std::string& path, const DenseTensor& t) {
    std::ofstream out(path);
    if (!out) throw ShapeError("cannot write tensor file: " + path);
    out << tensor_to_json(t).dump(2) << "\n";
}

CoordinateSystem system_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("metric"))
        throw ShapeError("system json: need at least a \"metric\" field");
    std::string metric = j.at("metric").get<std::string>();
    int dim = j.value("dim", 3);

    CoordinateSystem sys = builtin_system(metric, dim);  // throws on unknown name
    if (j.contains("name")) sys.name = j.at("name").get<std::string>();
    if (j.contains("coords")) {
        auto names = j.at("coords").get<std::vector<std::string>>();
        if (static_cast<int>(names.size()) != sys.dim)
            throw ShapeError("system json: coords list must have dim entries");
        sys.coord_names = std::move(names);
    }
    return sys;
}

CoordinateSystem load_coordinate_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ShapeError("cannot open system file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ShapeError("malformed json in " + path + ": " + e.what());
    }
    return system_from_json(j);
}

} // namespace tk
