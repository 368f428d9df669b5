#ifndef SEMICOVER_IO_HH
#define SEMICOVER_IO_HH 1

#include <semicover/covering.hh>
#include <semicover/multigraph.hh>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semicover
{
    /// Malformed input file. The message carries a position: a byte offset
    /// for syntax errors, a JSON pointer for structural ones.
    class ParseError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    /// Lists as written in a file: ids of the input graph mapped to ids of
    /// the target graph, unresolved until the target is known.
    struct RawLists
    {
        std::vector<std::pair<std::string, std::vector<std::string>>> vertices;
        std::vector<std::pair<std::string, std::vector<std::string>>> edges;

        [[nodiscard]] auto empty() const -> bool { return vertices.empty() && edges.empty(); }
    };

    struct GraphFile
    {
        Multigraph graph;
        RawLists lists;
    };

    auto parse_graph(std::string_view text) -> GraphFile;
    auto parse_lists(std::string_view text) -> RawLists;
    auto parse_cover(std::string_view text, const Multigraph & g, const Multigraph & h) -> CoverMap;

    auto write_graph(const Multigraph & g, const RawLists & lists = {}) -> std::string;
    auto write_lists(const RawLists & lists) -> std::string;
    auto write_cover(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> std::string;

    /// Resolves ids against g (keys) and h (targets); unknown ids are a DomainError.
    auto resolve_lists(const RawLists & raw, const Multigraph & g, const Multigraph & h) -> ListAssignment;
    auto unresolve_lists(const ListAssignment & lists, const Multigraph & g, const Multigraph & h) -> RawLists;

    /// Reads a whole file, or standard input for "-".
    auto read_input(const std::string & path) -> std::string;
}

#endif
