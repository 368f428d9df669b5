#include <semicover/generators.hh>
#include <semicover/isomorphism.hh>

using std::string;
using std::vector;

namespace semicover
{
    auto ring(unsigned k) -> Multigraph
    {
        if (k < 2)
            throw DomainError("ring(k) needs k >= 2");
        Multigraph g;
        for (unsigned j = 1; j <= k; ++j) {
            g.add_vertex(std::to_string(j));
            g.add_vertex(std::to_string(j) + "'");
        }
        for (unsigned j = 1; j <= k; ++j) {
            auto plain = VertexIndex(2 * (j - 1)), primed = VertexIndex(2 * (j - 1) + 1);
            g.add_ordinary("d" + std::to_string(j) + "a", plain, primed);
            g.add_ordinary("d" + std::to_string(j) + "b", plain, primed);
            g.add_ordinary("s" + std::to_string(j), primed, VertexIndex((2 * j) % (2 * k)));
        }
        return g;
    }

    namespace
    {
        enum class Decoration
        {
            semi,
            loop,
            two_semis
        };

        auto decorate(Multigraph & g, VertexIndex v, Decoration d, const string & tag) -> void
        {
            switch (d) {
                case Decoration::semi: g.add_semi("s" + tag, v); break;
                case Decoration::loop: g.add_loop("l" + tag, v); break;
                case Decoration::two_semis:
                    g.add_semi("s" + tag + "a", v);
                    g.add_semi("s" + tag + "b", v);
                    break;
            }
        }

        auto options_for_deficit(unsigned deficit) -> vector<Decoration>
        {
            if (deficit == 1)
                return {Decoration::semi};
            return {Decoration::loop, Decoration::two_semis};
        }
    }

    auto sausages(unsigned k) -> vector<Multigraph>
    {
        if (k < 2)
            throw DomainError("sausages(k) needs k >= 2");

        vector<Multigraph> result;
        for (unsigned parity = 0; parity < 2; ++parity) {
            // edge i joins p<i> and p<i+1>; it is doubled when i % 2 == parity
            auto doubled = [&](unsigned i) { return i % 2 == parity; };
            unsigned first_deficit = doubled(1) ? 1 : 2;
            unsigned last_deficit = doubled(k - 1) ? 1 : 2;
            for (auto first : options_for_deficit(first_deficit))
                for (auto last : options_for_deficit(last_deficit)) {
                    Multigraph g;
                    for (unsigned i = 1; i <= k; ++i)
                        g.add_vertex("p" + std::to_string(i));
                    for (unsigned i = 1; i < k; ++i) {
                        if (doubled(i)) {
                            g.add_ordinary("e" + std::to_string(i) + "a", i - 1, i);
                            g.add_ordinary("e" + std::to_string(i) + "b", i - 1, i);
                        }
                        else
                            g.add_ordinary("e" + std::to_string(i), i - 1, i);
                    }
                    decorate(g, 0, first, "1");
                    decorate(g, k - 1, last, std::to_string(k));

                    bool seen = false;
                    for (auto & h : result)
                        if (are_isomorphic(g, h)) {
                            seen = true;
                            break;
                        }
                    if (! seen)
                        result.push_back(std::move(g));
                }
        }
        return result;
    }

    auto one_vertex(unsigned semis, unsigned loops) -> Multigraph
    {
        Multigraph g;
        g.add_vertex("x");
        for (unsigned i = 1; i <= semis; ++i)
            g.add_semi("s" + std::to_string(i), 0);
        for (unsigned i = 1; i <= loops; ++i)
            g.add_loop("l" + std::to_string(i), 0);
        return g;
    }

    auto cycle(unsigned n) -> Multigraph
    {
        if (n < 1)
            throw DomainError("cycle(n) needs n >= 1");
        Multigraph g;
        for (unsigned i = 1; i <= n; ++i)
            g.add_vertex("x" + std::to_string(i));
        if (n == 1) {
            g.add_loop("e1", 0);
            return g;
        }
        for (unsigned i = 1; i <= n; ++i)
            g.add_ordinary("e" + std::to_string(i), i - 1, i % n);
        return g;
    }

    auto open_path(unsigned n) -> Multigraph
    {
        if (n < 1)
            throw DomainError("open_path(n) needs n >= 1");
        Multigraph g;
        for (unsigned i = 1; i <= n; ++i)
            g.add_vertex("x" + std::to_string(i));
        g.add_semi("e0", 0);
        for (unsigned i = 1; i < n; ++i)
            g.add_ordinary("e" + std::to_string(i), i - 1, i);
        g.add_semi("e" + std::to_string(n), n - 1);
        return g;
    }

    auto path(unsigned n) -> Multigraph
    {
        Multigraph g;
        for (unsigned i = 1; i <= n; ++i)
            g.add_vertex("x" + std::to_string(i));
        for (unsigned i = 1; i < n; ++i)
            g.add_ordinary("e" + std::to_string(i), i - 1, i);
        return g;
    }

    auto complete_bipartite(unsigned k) -> Multigraph
    {
        if (k < 1)
            throw DomainError("complete_bipartite(k) needs k >= 1");
        Multigraph g;
        for (unsigned i = 1; i <= k; ++i)
            g.add_vertex("a" + std::to_string(i));
        for (unsigned i = 1; i <= k; ++i)
            g.add_vertex("b" + std::to_string(i));
        for (unsigned i = 1; i <= k; ++i)
            for (unsigned j = 1; j <= k; ++j)
                g.add_ordinary("a" + std::to_string(i) + "b" + std::to_string(j), i - 1, k + j - 1);
        return g;
    }

    auto complete_graph(unsigned n) -> Multigraph
    {
        Multigraph g;
        for (unsigned i = 1; i <= n; ++i)
            g.add_vertex("v" + std::to_string(i));
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = i + 1; j <= n; ++j)
                g.add_ordinary("v" + std::to_string(i) + "v" + std::to_string(j), i - 1, j - 1);
        return g;
    }

    auto triple_edge() -> Multigraph
    {
        Multigraph g;
        g.add_vertex("a");
        g.add_vertex("b");
        for (unsigned i = 1; i <= 3; ++i)
            g.add_ordinary("e" + std::to_string(i), 0, 1);
        return g;
    }

    auto petersen() -> Multigraph
    {
        Multigraph g;
        for (unsigned i = 0; i < 5; ++i)
            g.add_vertex("o" + std::to_string(i));
        for (unsigned i = 0; i < 5; ++i)
            g.add_vertex("i" + std::to_string(i));
        for (unsigned i = 0; i < 5; ++i) {
            g.add_ordinary("o" + std::to_string(i) + "o" + std::to_string((i + 1) % 5), i, (i + 1) % 5);
            g.add_ordinary("o" + std::to_string(i) + "i" + std::to_string(i), i, 5 + i);
            g.add_ordinary("i" + std::to_string(i) + "i" + std::to_string((i + 2) % 5), 5 + i, 5 + (i + 2) % 5);
        }
        return g;
    }
}
