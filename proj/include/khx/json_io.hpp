#ifndef KHX_JSON_IO_HPP
#define KHX_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "khx/movie.hpp"

namespace khx {

using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);

Diagram diagram_from_json(const Json& j);
Json diagram_to_json(const Diagram& d);

Move move_from_json(const Json& j);
Json move_to_json(const Move& m);

Movie movie_from_json(const Json& j);
Json movie_to_json(const Movie& m);

struct TableRow {
    std::string name;
    Diagram diagram;
};
std::vector<TableRow> table_from_json(const Json& j);
Json table_to_json(const std::vector<TableRow>& rows);

} // namespace khx

#endif
