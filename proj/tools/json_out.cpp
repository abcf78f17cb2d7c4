#include "json_out.hpp"

#include "varimin/error.hpp"
#include "varimin/field_io.hpp"

#include <fstream>
#include <sstream>

namespace varimin::cli {

namespace {

void dump(std::ostream& os, const nlohmann::json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << nlohmann::json(it.key()).dump() << ": ";
                dump(os, it.value(), indent + 2);
            }
            os << '\n' << close << '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            bool scalar = true;
            for (const auto& e : j) scalar = scalar && e.is_primitive();
            if (scalar) {
                os << '[';
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    dump(os, j[i], indent);
                }
                os << ']';
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                dump(os, j[i], indent + 2);
            }
            os << '\n' << close << ']';
            return;
        }
        case nlohmann::json::value_t::number_float:
            os << format_number(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
    std::ostringstream os;
    dump(os, j, 0);
    os << '\n';
    return os.str();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << dump_json(j);
}

}  // namespace varimin::cli
