#include "conftc/closed_forms.hpp"

#include <stdexcept>

namespace conftc {

namespace {

void require(bool ok, const char* msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

}  // namespace

TCQuery make_tc_query(int m, int n, int p, int s) {
    require(m >= 2, "tc query: requires m >= 2");
    require(n >= 1, "tc query: requires n >= 1");
    require(p >= 0, "tc query: requires p >= 0");
    require(s >= 2, "tc query: requires s >= 2");
    require(n != 1 || p != 0, "tc query: (n, p) = (1, 0) is contractible");
    return TCQuery{m, n, p, s};
}

TCValue tc_s(const TCQuery& q) {
    make_tc_query(q.m, q.n, q.p, q.s);
    bool even = q.m % 2 == 0;
    if (q.p == 0)
        return even ? TCValue{q.s * (q.n - 1) - 1, "p=0 and m even"}
                    : TCValue{q.s * (q.n - 1), "p=0 and m odd"};
    if (q.p == 1 && even)
        return {q.s * q.n - 1, "p=1 and m even"};
    return {q.s * q.n, "otherwise"};
}

int cl_s_conf(int m, int n, int s) {
    require(m >= 2, "cl_s: requires m >= 2");
    require(n >= 2, "cl_s: requires n >= 2");
    require(s >= 2, "cl_s: requires s >= 2");
    return s * (n - 1) - 1 + (m % 2 == 1 ? 1 : 0);
}

int cat_conf(int m, int n, int p) {
    require(m >= 2, "cat: requires m >= 2");
    require(n >= 1, "cat: requires n >= 1");
    require(n != 1 || p != 0, "cat: (n, p) = (1, 0) is contractible");
    return p == 0 ? n - 1 : n;
}

int tc_s_wedge(int p, int m, int s) {
    require(p >= 1, "tc wedge: requires p >= 1");
    require(m >= 2, "tc wedge: requires m >= 2");
    require(s >= 2, "tc wedge: requires s >= 2");
    return p == 1 && m % 2 == 0 ? s - 1 : s;
}

int upper_bound_dim_conn(int dim, int conn, int s) {
    require(dim >= 0, "upper bound: requires dim >= 0");
    require(conn >= 0, "upper bound: requires conn >= 0");
    require(s >= 2, "upper bound: requires s >= 2");
    return s * dim / (conn + 1);
}

int space_dim(int m, int n, int p) {
    return (p == 0 ? n - 1 : n) * (m - 1);
}

int space_conn(int m) {
    return m - 2;
}

}  // namespace conftc
