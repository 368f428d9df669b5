#include <semicover/solver.hh>

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <thread>

using std::optional;
using std::vector;

namespace semicover
{
    auto to_string(Status s) -> std::string_view
    {
        switch (s) {
            case Status::satisfiable: return "satisfiable";
            case Status::unsatisfiable: return "unsatisfiable";
            case Status::resource_limit: return "resource-limit";
        }
        return "?";
    }

    namespace
    {
        using Bits = std::uint64_t;
        using Clock = std::chrono::steady_clock;

        struct ResourceExhausted
        {
        };

        inline auto bit(unsigned i) -> Bits { return Bits{1} << i; }

        // An edge of G seen from one of its ends.
        struct Item
        {
            EdgeIndex e;
            VertexIndex w; // the other end; the vertex itself for loops and semi-edges
            EdgeKind kind;
        };

        // Transposition of two target vertices with identical neighbourhoods,
        // together with the matching permutation of their edges.
        struct Twin
        {
            Bits vertices = 0;
            Bits edges = 0;
            vector<std::pair<unsigned, unsigned>> edge_pairs;
        };

        struct TrailEntry
        {
            std::uint32_t index;
            bool is_edge;
            Bits old;
        };

        class Search
        {
        public:
            Search(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, const SolverOptions & options,
                const std::function<bool(const CoverMap &)> & found) :
                _g(g),
                _h(h),
                _lists(lists),
                _options(options),
                _found(found),
                _start(Clock::now())
            {
                if (h.num_vertices() > 64 || h.num_edges() > 64)
                    throw DomainError("the solver supports target graphs with at most 64 vertices and 64 edges");
                lists.validate(g, h);
                prepare_target();
                prepare_input();
            }

            auto run() -> Enumeration
            {
                Enumeration result;
                try {
                    if (initial_domains() && propagate())
                        dfs();
                    result.status = _solutions > 0 ? Status::satisfiable : Status::unsatisfiable;
                    result.truncated = _stopped;
                }
                catch (const ResourceExhausted &) {
                    result.status = _solutions > 0 ? Status::satisfiable : Status::resource_limit;
                    result.truncated = true;
                }
                _stats.seconds = std::chrono::duration<double>(Clock::now() - _start).count();
                result.stats = _stats;
                return result;
            }

        private:
            const Multigraph & _g;
            const Multigraph & _h;
            const ListAssignment & _lists;
            const SolverOptions & _options;
            const std::function<bool(const CoverMap &)> & _found;
            Clock::time_point _start;
            SolveStats _stats;
            std::size_t _solutions = 0;
            bool _stopped = false;

            // target structure
            vector<Bits> _edges_at, _loops_at, _semis_at;
            vector<vector<std::pair<EdgeIndex, VertexIndex>>> _around; // per x: (f, other end of f)
            vector<unsigned> _h_degree;
            vector<std::uint8_t> _capacity;
            vector<EdgeKind> _h_kind;
            Bits _all_vertices = 0, _all_edges = 0, _semis = 0, _loops = 0;

            // input structure
            vector<vector<Item>> _items;
            vector<unsigned> _g_degree;

            // search state
            vector<Bits> _dv, _de;
            vector<TrailEntry> _trail;
            vector<VertexIndex> _queue;
            vector<std::uint8_t> _queued;

            // twins, by x * |V(H)| + y, and scratch marks for symmetric regions
            vector<optional<Twin>> _twins;
            vector<unsigned> _vertex_mark, _edge_mark, _star_mark;
            unsigned _epoch = 0;

            // scratch space for local assignments
            vector<Bits> _candidates, _supported;
            vector<std::uint8_t> _left;
            bool _local_found = false, _local_done = false;

            auto prepare_target() -> void
            {
                auto n = _h.num_vertices();
                _edges_at.assign(n, 0);
                _loops_at.assign(n, 0);
                _semis_at.assign(n, 0);
                _around.assign(n, {});
                _h_degree.assign(n, 0);
                for (VertexIndex x = 0; x < n; ++x) {
                    _all_vertices |= bit(x);
                    _h_degree[x] = _h.degree(x);
                    for (auto f : _h.incident(x)) {
                        _edges_at[x] |= bit(f);
                        _around[x].emplace_back(f, _h.other_end(f, x));
                    }
                }
                for (EdgeIndex f = 0; f < _h.num_edges(); ++f) {
                    const auto & e = _h.edge(f);
                    _all_edges |= bit(f);
                    _capacity.push_back(ends_at(e));
                    _h_kind.push_back(e.kind);
                    if (e.kind == EdgeKind::loop) {
                        _loops |= bit(f);
                        _loops_at[e.first] |= bit(f);
                    }
                    else if (e.kind == EdgeKind::semi) {
                        _semis |= bit(f);
                        _semis_at[e.first] |= bit(f);
                    }
                }
                _left.assign(_h.num_edges(), 0);
                prepare_twins();
            }

            auto prepare_twins() -> void
            {
                auto n = _h.num_vertices();
                _twins.assign(std::size_t(n) * n, std::nullopt);
                if (! _options.pruning.twin_symmetry)
                    return;
                for (VertexIndex x = 0; x < n; ++x)
                    for (VertexIndex y = x + 1; y < n; ++y) {
                        // edges at x and at y grouped by kind and far end, x and y counting as one end
                        std::map<std::pair<int, VertexIndex>, vector<EdgeIndex>> at_x, at_y;
                        auto key = [&](EdgeIndex f, VertexIndex end) {
                            auto z = _h.other_end(f, end);
                            return std::pair{int(_h.edge(f).kind), z == x || z == y ? n : z};
                        };
                        for (auto f : _h.incident(x))
                            at_x[key(f, x)].push_back(f);
                        for (auto f : _h.incident(y))
                            at_y[key(f, y)].push_back(f);
                        if (at_x.size() != at_y.size())
                            continue;
                        Twin t;
                        t.vertices = bit(x) | bit(y);
                        bool ok = true;
                        for (auto & [k, fs] : at_x) {
                            auto other = at_y.find(k);
                            if (other == at_y.end() || other->second.size() != fs.size()) {
                                ok = false;
                                break;
                            }
                            if (k.second == n)
                                continue;
                            for (std::size_t i = 0; i < fs.size(); ++i) {
                                t.edge_pairs.emplace_back(fs[i], other->second[i]);
                                t.edges |= bit(fs[i]) | bit(other->second[i]);
                            }
                        }
                        if (! ok)
                            continue;
                        // loops and semi-edges at x pair with those at y; edges joining x and y map to themselves
                        for (int kind : {int(EdgeKind::loop), int(EdgeKind::semi)}) {
                            auto fx = at_x.find({kind, n}), fy = at_y.find({kind, n});
                            if (fx == at_x.end())
                                continue;
                            for (std::size_t i = 0; i < fx->second.size(); ++i) {
                                t.edge_pairs.emplace_back(fx->second[i], fy->second[i]);
                                t.edges |= bit(fx->second[i]) | bit(fy->second[i]);
                            }
                        }
                        _twins[std::size_t(x) * n + y] = t;
                        _twins[std::size_t(y) * n + x] = std::move(t);
                    }
                _vertex_mark.assign(_g.num_vertices(), 0);
                _edge_mark.assign(_g.num_edges(), 0);
                _star_mark.assign(_g.num_vertices(), 0);
            }

            auto prepare_input() -> void
            {
                auto n = _g.num_vertices();
                _items.assign(n, {});
                _g_degree.assign(n, 0);
                for (VertexIndex v = 0; v < n; ++v) {
                    _g_degree[v] = _g.degree(v);
                    for (auto e : _g.incident(v))
                        _items[v].push_back(Item{e, _g.other_end(e, v), _g.edge(e).kind});
                }
                _queued.assign(n, 0);
            }

            auto to_mask(const optional<vector<std::uint32_t>> & list, Bits all) -> Bits
            {
                if (! list)
                    return all;
                Bits m = 0;
                for (auto i : *list)
                    m |= bit(i);
                return m & all;
            }

            auto degree_fits(VertexIndex v, VertexIndex x) const -> bool
            {
                return _options.mode == CoverMode::total ? _g_degree[v] == _h_degree[x] : _g_degree[v] <= _h_degree[x];
            }

            auto initial_domains() -> bool
            {
                _dv.resize(_g.num_vertices());
                _de.resize(_g.num_edges());
                for (VertexIndex v = 0; v < _g.num_vertices(); ++v) {
                    Bits m = to_mask(_lists.vertex_list(v), _all_vertices);
                    if (_options.pruning.degree_filter)
                        for (VertexIndex x = 0; x < _h.num_vertices(); ++x)
                            if (! degree_fits(v, x))
                                m &= ~bit(x);
                    _dv[v] = m;
                }
                for (EdgeIndex e = 0; e < _g.num_edges(); ++e) {
                    Bits m = to_mask(_lists.edge_list(e), _all_edges);
                    switch (_g.edge(e).kind) {
                        case EdgeKind::semi: m &= _semis; break;
                        case EdgeKind::loop: m &= _loops; break;
                        case EdgeKind::ordinary: break;
                    }
                    _de[e] = m;
                }

                if (_options.pruning.component_pinning)
                    pin_components();

                for (auto d : _dv)
                    if (! d)
                        return false;
                for (auto d : _de)
                    if (! d)
                        return false;
                for (VertexIndex v = 0; v < _g.num_vertices(); ++v)
                    enqueue(v);
                return true;
            }

            // Every component of G lands inside a single component of H.
            auto pin_components() -> void
            {
                auto hc = connected_components(_h);
                unsigned h_count = hc.empty() ? 0 : *std::max_element(hc.begin(), hc.end()) + 1;
                vector<Bits> component_mask(h_count, 0);
                for (VertexIndex x = 0; x < _h.num_vertices(); ++x)
                    component_mask[hc[x]] |= bit(x);

                auto gc = connected_components(_g);
                unsigned g_count = gc.empty() ? 0 : *std::max_element(gc.begin(), gc.end()) + 1;
                vector<Bits> allowed(g_count, 0);
                for (unsigned c = 0; c < g_count; ++c)
                    for (unsigned k = 0; k < h_count; ++k)
                        allowed[c] |= component_mask[k];
                for (VertexIndex v = 0; v < _g.num_vertices(); ++v)
                    for (unsigned k = 0; k < h_count; ++k)
                        if (! (_dv[v] & component_mask[k]))
                            allowed[gc[v]] &= ~component_mask[k];
                for (VertexIndex v = 0; v < _g.num_vertices(); ++v)
                    _dv[v] &= allowed[gc[v]];
            }

            auto enqueue(VertexIndex v) -> void
            {
                if (! _queued[v]) {
                    _queued[v] = 1;
                    _queue.push_back(v);
                }
            }

            auto set_vertex(VertexIndex v, Bits m) -> void
            {
                _trail.push_back(TrailEntry{v, false, _dv[v]});
                _dv[v] = m;
            }

            auto set_edge(EdgeIndex e, Bits m) -> void
            {
                _trail.push_back(TrailEntry{e, true, _de[e]});
                _de[e] = m;
            }

            auto undo(std::size_t mark) -> void
            {
                while (_trail.size() > mark) {
                    auto & t = _trail.back();
                    (t.is_edge ? _de : _dv)[t.index] = t.old;
                    _trail.pop_back();
                }
            }

            auto check_budget() -> void
            {
                if (_options.cancel && _options.cancel->load(std::memory_order_relaxed))
                    throw ResourceExhausted{};
                if (_options.budget.node_limit && _stats.nodes > *_options.budget.node_limit)
                    throw ResourceExhausted{};
                if (_options.budget.time_limit && Clock::now() - _start > *_options.budget.time_limit)
                    throw ResourceExhausted{};
            }

            auto propagate() -> bool
            {
                std::size_t head = 0;
                bool ok = true;
                while (head < _queue.size()) {
                    auto v = _queue[head++];
                    _queued[v] = 0;
                    if (! revise(v)) {
                        ok = false;
                        break;
                    }
                    if ((++_stats.revisions & 0xfff) == 0)
                        check_budget();
                    // compact occasionally so the queue does not grow without bound
                    if (head > 4096 && head * 2 > _queue.size()) {
                        _queue.erase(_queue.begin(), _queue.begin() + std::ptrdiff_t(head));
                        head = 0;
                    }
                }
                if (! ok)
                    for (std::size_t i = head; i < _queue.size(); ++i)
                        _queued[_queue[i]] = 0;
                _queue.clear();
                return ok;
            }

            auto demand(const Item & it) const -> std::uint8_t { return it.kind == EdgeKind::loop ? 2 : 1; }

            auto local_search(const vector<Item> & items, std::size_t i) -> void
            {
                if (_local_done)
                    return;
                if (i == items.size()) {
                    _local_found = true;
                    return;
                }
                auto need = demand(items[i]);
                for (Bits m = _candidates[i]; m; m &= m - 1) {
                    auto f = unsigned(std::countr_zero(m));
                    if (_left[f] < need)
                        continue;
                    _left[f] -= need;
                    bool before = _local_found;
                    _local_found = false;
                    local_search(items, i + 1);
                    if (_local_found)
                        _supported[i] |= bit(f);
                    _local_found = _local_found || before;
                    _left[f] += need;
                    if (i == 0) {
                        bool complete = true;
                        for (std::size_t j = 0; j < items.size() && complete; ++j)
                            complete = _supported[j] == _candidates[j];
                        if (complete)
                            _local_done = true;
                    }
                    if (_local_done)
                        return;
                }
            }

            // Candidate images at x for the edges around v; false if some edge has none.
            auto candidates_at(VertexIndex x, const vector<Item> & items) -> bool
            {
                for (std::size_t i = 0; i < items.size(); ++i) {
                    const auto & it = items[i];
                    Bits m = _de[it.e] & _edges_at[x];
                    switch (it.kind) {
                        case EdgeKind::semi: m &= _semis_at[x]; break;
                        case EdgeKind::loop: m &= _loops_at[x]; break;
                        case EdgeKind::ordinary: {
                            Bits keep = 0;
                            for (auto & [f, y] : _around[x])
                                if ((m & bit(f)) && (_dv[it.w] & bit(y)))
                                    keep |= bit(f);
                            m = keep;
                            break;
                        }
                    }
                    if (! m)
                        return false;
                    _candidates[i] = m;
                }
                return true;
            }

            auto revise(VertexIndex v) -> bool
            {
                if (! _options.pruning.local_bijection)
                    return check_assigned(v);

                const auto & items = _items[v];
                auto d = items.size();
                _candidates.assign(d, 0);
                _supported.assign(d, 0);
                vector<Bits> support(d, 0);
                Bits new_dv = 0;

                for (Bits m = _dv[v]; m; m &= m - 1) {
                    auto x = unsigned(std::countr_zero(m));
                    if (! degree_fits(v, x))
                        continue;
                    if (! candidates_at(x, items))
                        continue;
                    for (auto & [f, y] : _around[x])
                        _left[f] = _capacity[f];
                    std::fill(_supported.begin(), _supported.end(), 0);
                    _local_found = false;
                    _local_done = false;
                    local_search(items, 0);
                    if (! _local_found)
                        continue;
                    new_dv |= bit(x);
                    for (std::size_t i = 0; i < d; ++i)
                        support[i] |= _supported[i];
                }

                if (! new_dv)
                    return false;
                if (new_dv != _dv[v]) {
                    set_vertex(v, new_dv);
                    for (auto & it : items)
                        if (it.w != v)
                            enqueue(it.w);
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const auto & it = items[i];
                    Bits nd = _de[it.e] & support[i];
                    if (nd != _de[it.e]) {
                        if (! nd)
                            return false;
                        set_edge(it.e, nd);
                        if (it.w != v)
                            enqueue(it.w);
                    }
                }
                return true;
            }

            // Without propagation: reject only contradictions among decided elements at v.
            auto check_assigned(VertexIndex v) -> bool
            {
                if (std::popcount(_dv[v]) != 1)
                    return true;
                auto x = unsigned(std::countr_zero(_dv[v]));
                for (auto & [f, y] : _around[x])
                    _left[f] = _capacity[f];
                unsigned used = 0;
                for (auto & it : _items[v]) {
                    if (std::popcount(_de[it.e]) != 1)
                        continue;
                    auto f = unsigned(std::countr_zero(_de[it.e]));
                    if (! (_edges_at[x] & bit(f)))
                        return false;
                    auto need = demand(it);
                    if (it.kind == EdgeKind::loop && _h_kind[f] != EdgeKind::loop)
                        return false;
                    if (it.kind == EdgeKind::semi && _h_kind[f] != EdgeKind::semi)
                        return false;
                    if (it.kind == EdgeKind::ordinary) {
                        auto y = _h.other_end(f, x);
                        if (! (_dv[it.w] & bit(y)))
                            return false;
                    }
                    if (_left[f] < need)
                        return false;
                    _left[f] -= need;
                    used += need;
                }
                return used <= _h_degree[x];
            }

            auto leaf() -> bool
            {
                ++_stats.leaves;
                CoverMap f;
                f.vmap.reserve(_dv.size());
                for (auto d : _dv)
                    f.vmap.push_back(VertexIndex(std::countr_zero(d)));
                f.emap.reserve(_de.size());
                for (auto d : _de)
                    f.emap.push_back(EdgeIndex(std::countr_zero(d)));
                auto verdict = _options.mode == CoverMode::total ? verify_cover(_g, _h, f) : verify_partial_cover(_g, _h, f);
                if (! verdict || ! respects_lists(f, _lists))
                    return true;
                ++_solutions;
                if (! _found(f)) {
                    _stopped = true;
                    return false;
                }
                return true;
            }

            auto invariant(Bits d, const Twin & t, bool is_edge) const -> bool
            {
                if (! is_edge) {
                    auto m = d & t.vertices;
                    return m == 0 || m == t.vertices;
                }
                for (auto & [f, g] : t.edge_pairs)
                    if (bool(d & bit(f)) != bool(d & bit(g)))
                        return false;
                return true;
            }

            // Whether swapping the twins on a region around v that is closed
            // under the star constraints maps the current domains onto themselves.
            auto symmetric_region(VertexIndex v, const Twin & t) -> bool
            {
                ++_epoch;
                vector<VertexIndex> stars{v};
                auto visit = [&](Bits d, bool is_edge, std::uint32_t index) {
                    if (! (d & (is_edge ? t.edges : t.vertices)))
                        return true;
                    auto & mark = (is_edge ? _edge_mark : _vertex_mark)[index];
                    if (mark == _epoch)
                        return true;
                    if (! invariant(d, t, is_edge))
                        return false;
                    mark = _epoch;
                    if (is_edge) {
                        stars.push_back(_g.edge(index).first);
                        stars.push_back(_g.edge(index).second);
                    }
                    else {
                        stars.push_back(index);
                        for (auto & it : _items[index])
                            stars.push_back(it.w);
                    }
                    return true;
                };
                if (! visit(_dv[v], false, v))
                    return false;
                while (! stars.empty()) {
                    auto s = stars.back();
                    stars.pop_back();
                    if (_star_mark[s] == _epoch)
                        continue;
                    _star_mark[s] = _epoch;
                    if (! visit(_dv[s], false, s))
                        return false;
                    for (auto & it : _items[s])
                        if (! visit(_de[it.e], true, it.e) || ! visit(_dv[it.w], false, it.w))
                            return false;
                }
                return true;
            }

            // Returns false when the search should stop.
            auto dfs() -> bool
            {
                ++_stats.nodes;
                if ((_stats.nodes & 0x3f) == 0
                    || (_options.budget.node_limit && _stats.nodes > *_options.budget.node_limit))
                    check_budget();

                std::uint32_t best = 0;
                int best_size = 65;
                bool is_edge = false;
                for (VertexIndex v = 0; v < _dv.size(); ++v) {
                    auto s = std::popcount(_dv[v]);
                    if (s > 1 && s < best_size) {
                        best = v;
                        best_size = s;
                        if (s == 2)
                            break;
                    }
                }
                if (best_size == 65)
                    for (EdgeIndex e = 0; e < _de.size(); ++e) {
                        auto s = std::popcount(_de[e]);
                        if (s > 1 && s < best_size) {
                            best = e;
                            best_size = s;
                            is_edge = true;
                            if (s == 2)
                                break;
                        }
                    }
                if (best_size == 65)
                    return leaf();

                Bits domain = is_edge ? _de[best] : _dv[best];
                vector<unsigned> values;
                for (Bits m = domain; m; m &= m - 1)
                    values.push_back(unsigned(std::countr_zero(m)));
                if (_options.value_rotation)
                    std::rotate(values.begin(), values.begin() + std::ptrdiff_t(_options.value_rotation % values.size()),
                        values.end());

                vector<unsigned> failed;
                for (auto value : values) {
                    if (! is_edge && ! failed.empty()) {
                        auto n = _h.num_vertices();
                        bool mirrored = false;
                        for (auto x : failed)
                            if (auto & t = _twins[std::size_t(x) * n + value]; t && symmetric_region(best, *t)) {
                                mirrored = true;
                                break;
                            }
                        if (mirrored) {
                            ++_stats.symmetric_skips;
                            continue;
                        }
                    }
                    auto solutions_before = _solutions;
                    auto mark = _trail.size();
                    if (is_edge) {
                        set_edge(best, bit(value));
                        const auto & e = _g.edge(best);
                        enqueue(e.first);
                        enqueue(e.second);
                    }
                    else {
                        set_vertex(best, bit(value));
                        enqueue(best);
                        for (auto & it : _items[best])
                            enqueue(it.w);
                    }
                    if (propagate() && ! dfs())
                        return false;
                    undo(mark);
                    if (_solutions == solutions_before)
                        failed.push_back(value);
                }
                return true;
            }
        };
    }

    auto for_each_cover(const Multigraph & g, const Multigraph & h, const ListAssignment & lists,
        const std::function<bool(const CoverMap &)> & found, const SolverOptions & options) -> Enumeration
    {
        Search search(g, h, lists, options, found);
        return search.run();
    }

    auto solve(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, const SolverOptions & options)
        -> SolveOutcome
    {
        SolveOutcome outcome;
        auto result = for_each_cover(
            g, h, lists,
            [&](const CoverMap & f) {
                outcome.witness = f;
                return false;
            },
            options);
        outcome.status = result.status;
        outcome.stats = result.stats;
        return outcome;
    }

    auto solve_portfolio(const Multigraph & g, const Multigraph & h, const ListAssignment & lists,
        const SolverOptions & options, unsigned jobs) -> SolveOutcome
    {
        if (jobs <= 1)
            return solve(g, h, lists, options);

        std::atomic<bool> cancel{false};
        std::mutex lock;
        optional<SolveOutcome> winner;
        SolveOutcome fallback;
        fallback.status = Status::resource_limit;
        vector<std::thread> workers;
        for (unsigned j = 0; j < jobs; ++j)
            workers.emplace_back([&, j] {
                auto mine = options;
                mine.value_rotation = options.value_rotation + j;
                mine.cancel = &cancel;
                auto outcome = solve(g, h, lists, mine);
                std::lock_guard guard(lock);
                if (outcome.status != Status::resource_limit && ! winner) {
                    winner = std::move(outcome);
                    cancel = true;
                }
                else if (! winner)
                    fallback.stats.nodes += outcome.stats.nodes;
            });
        for (auto & w : workers)
            w.join();
        return winner ? *winner : fallback;
    }

    auto enumerate(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, std::size_t limit,
        const SolverOptions & options) -> Enumeration
    {
        vector<CoverMap> covers;
        auto result = for_each_cover(
            g, h, lists,
            [&](const CoverMap & f) {
                if (covers.size() >= limit)
                    return false;
                covers.push_back(f);
                return true;
            },
            options);
        result.covers = std::move(covers);
        return result;
    }

    auto enumerate_partial(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, std::size_t limit,
        SolverOptions options) -> Enumeration
    {
        options.mode = CoverMode::partial;
        return enumerate(g, h, lists, limit, options);
    }
}
