#include <cmath>

#include "doctest.h"

#include "forge/errors.hpp"
#include "forge/registry.hpp"
#include "forge/stabilizer.hpp"
#include "forge/verifier.hpp"
#include "forge/weyl.hpp"
#include "support/states.hpp"

using namespace forge;

TEST_CASE("weyl operators act as shift and clock matrices") {
    const Shape q2({2});
    const MonomialOp ident = weyl_matrix(WeylOperator::identity(q2));
    CHECK(ident.to_matrix().max_abs_diff(CMatrix::identity(2)) < 1e-15);

    // d=2, (a,b) = (1,1): XZ has matrix [[0,-1],[1,0]]
    const MonomialOp xz = weyl_matrix(WeylOperator(q2, {1}, {1}));
    CMatrix expect(2, 2);
    expect.at(0, 1) = -1.0;
    expect.at(1, 0) = 1.0;
    CHECK(xz.to_matrix().max_abs_diff(expect) < 1e-15);

    // d=3: Z X = w X Z as matrices
    const Shape q3({3});
    const CMatrix x = weyl_matrix(WeylOperator(q3, {1}, {0})).to_matrix();
    const CMatrix z = weyl_matrix(WeylOperator(q3, {0}, {1})).to_matrix();
    const CMatrix zx = z.multiply(x);
    CMatrix wxz = x.multiply(z);
    const cplx w = root_of_unity(1, 3);
    for (auto& v : wxz.data()) v *= w;
    CHECK(zx.max_abs_diff(wxz) < 1e-14);
}

TEST_CASE("weyl algebra: symbolic product matches matrix product") {
    const Shape shape({3, 2});
    const WeylOperator g(shape, {1, 1}, {2, 0}, 3);
    const WeylOperator h(shape, {2, 1}, {1, 1}, 0);
    const CMatrix lhs = weyl_matrix(weyl_mul(g, h)).to_matrix();
    const CMatrix rhs = weyl_matrix(g).to_matrix().multiply(weyl_matrix(h).to_matrix());
    CHECK(lhs.max_abs_diff(rhs) < 1e-13);

    CHECK(g.weight() == 2);
    CHECK(WeylOperator(shape, {0, 1}, {0, 0}).weight() == 1);
}

TEST_CASE("codespace extraction recovers the five-qubit code") {
    const Registry& reg = Registry::builtin();
    const Subspace w = reg.materialize("[[5,1,3]]_2");
    CHECK(w.dimension() == 2);
    CHECK(w.shape().dims() == std::vector<int>(5, 2));

    // cross-reductions of codewords vanish on every 2-subset
    for (const PartySubset& sub : all_subsets(5, 2))
        CHECK(reduce_cross(w.basis(0), w.basis(1), sub).matrix.max_abs() < 1e-10);
}

TEST_CASE("stabilizer projector is idempotent, hermitian, and has trace K") {
    for (const char* name : {"[[5,1,3]]_2", "[[4,2,2]]_2", "[[4,0,3]]_3"}) {
        const Registry& reg = Registry::builtin();
        const Subspace w = reg.materialize(name);
        const CMatrix p = w.projector();
        CHECK(p.adjoint().max_abs_diff(p) < 1e-10);
        CHECK(p.multiply(p).max_abs_diff(p) < 1e-10);
        CHECK(std::abs(p.trace().real() - w.dimension()) < 1e-8);
    }
}

TEST_CASE("degenerate stabilizer specs fail loudly") {
    // non-commuting generators: X and Z on one qubit
    StabilizerSpec bad;
    bad.p = 2;
    bad.num_parties = 1;
    bad.generators = {{{1}, {0}, 0}, {{0}, {1}, 0}};
    CHECK_THROWS_AS(codespace_from_stabilizer(bad), ConstructionError);

    // dependent rows
    StabilizerSpec dep;
    dep.p = 2;
    dep.num_parties = 2;
    dep.generators = {{{1, 1}, {0, 0}, 0}, {{1, 1}, {0, 0}, 0}};
    CHECK_THROWS_AS(codespace_from_stabilizer(dep), ConstructionError);

    // XZ without the Hermitian phase squares to -I
    StabilizerSpec phase;
    phase.p = 2;
    phase.num_parties = 1;
    phase.generators = {{{1}, {1}, 0}};
    CHECK_THROWS_AS(codespace_from_stabilizer(phase), ConstructionError);
    phase.generators = {{{1}, {1}, 1}};  // i X Z has order 2
    CHECK(codespace_from_stabilizer(phase).dimension() == 1);

    // no generators at all: the whole space
    StabilizerSpec whole;
    whole.p = 2;
    whole.num_parties = 1;
    CHECK(codespace_from_stabilizer(whole).dimension() == 2);
}

TEST_CASE("css composes classical rows into commuting generators") {
    // single row (1,1) twice: the two-qubit Bell-type [[2,0]] code
    const StabilizerSpec bell = css({{1, 1}}, {{1, 1}}, 2);
    const Subspace w = codespace_from_stabilizer(bell);
    CHECK(w.dimension() == 1);
    const PureState b = test::bell2();
    CHECK(std::abs(std::abs(inner_product(b, w.basis(0))) - 1.0) < 1e-12);

    // empty input: the whole space
    const StabilizerSpec whole = css({}, {}, 2, 2);
    CHECK(codespace_from_stabilizer(whole).dimension() == 4);

    // orthogonality violation
    CHECK_THROWS_AS(css({{1, 0}}, {{1, 1}}, 2), ValidationError);
}

TEST_CASE("css GRS route yields the distance-3 five-qudit code over GF(5)") {
    const Registry& reg = Registry::builtin();
    const Subspace w = reg.materialize("[[5,1,3]]_5");
    CHECK(w.dimension() == 5);
    CHECK(verify_pure_code(w, 3, {1e-9, 2, 1}).pass);
}

TEST_CASE("prime-power expansion of the GF(4) Bell pair merges back to the C4 Bell state") {
    GfqStabilizerSpec bell4;
    bell4.p = 2;
    bell4.m = 2;
    bell4.num_parties = 2;
    bell4.generators = {{{1, 1}, {0, 0}}, {{0, 0}, {1, 1}}};

    const StabilizerSpec expanded = expand_prime_power(bell4);
    CHECK(expanded.num_parties == 4);
    CHECK(expanded.generators.size() == 4);
    const Subspace qubits = codespace_from_stabilizer(expanded);
    CHECK(qubits.dimension() == 1);

    const Subspace merged = merge(qubits, expansion_merge_pairs(2, 2));
    CHECK(merged.shape().dims() == std::vector<int>{4, 4});
    const PureState bell = me_state(4);
    CHECK(std::abs(std::abs(inner_product(bell, merged.basis(0))) - 1.0) < 1e-12);
}

TEST_CASE("prime-power expansion with m=1 is the identity") {
    GfqStabilizerSpec spec;
    spec.p = 3;
    spec.m = 1;
    spec.num_parties = 2;
    spec.generators = {{{1, 2}, {0, 1}}};
    const StabilizerSpec out = expand_prime_power(spec);
    CHECK(out.num_parties == 2);
    CHECK(out.generators.size() == 1);
    CHECK(out.generators[0].x == std::vector<int>{1, 2});
    CHECK(out.generators[0].z == std::vector<int>{0, 1});
}

TEST_CASE("weyl and stabilizer scale guards") {
    // monomial materialization above a million amplitudes is refused
    const Shape wide(std::vector<int>(21, 2));
    CHECK_THROWS_AS(weyl_matrix(WeylOperator::identity(wide)), CapacityError);

    // a stabilizer group of order beyond 10^5 is refused
    StabilizerSpec big;
    big.p = 2;
    big.num_parties = 17;
    for (int i = 0; i < 17; ++i) {
        GeneratorRow row;
        row.x.assign(17, 0);
        row.z.assign(17, 0);
        row.z[i] = 1;
        big.generators.push_back(std::move(row));
    }
    CHECK_THROWS_AS(codespace_from_stabilizer(big), CapacityError);
}

TEST_CASE("registry resolves names and aliases, rejects unknowns") {
    const Registry& reg = Registry::builtin();
    CHECK(reg.has("((5,2,3))_2"));
    CHECK(reg.get("((5,2,3))_2").name == "[[5,1,3]]_2");
    CHECK_THROWS_AS(reg.get("[[9,9,9]]_9"), RegistryError);
    CHECK_THROWS_AS(reg.materialize("[[9,9,9]]_9"), RegistryError);
}

TEST_CASE("optional registry entries behave per their gating") {
    const Registry& reg = Registry::builtin();
    // the ten-qutrit code itself fits in memory and materializes
    CHECK(reg.materialize("[[10,4,4]]_3").dimension() == 81);
    // but its dense distance check is out of scale
    CHECK_THROWS_AS(verify_pure_code(reg.materialize("[[10,4,4]]_3"), 4, {1e-9, 2, 1}),
                    CapacityError);
    // pending data
    CHECK_THROWS_AS(reg.materialize("[[10,0,6]]_4"), RegistryError);
    // import hook without the external file
    CHECK_THROWS_AS(reg.materialize("[[4,0,3]]_6"), RegistryError);
}

TEST_CASE("registry entries carry QMDS flags consistent with their parameters") {
    const Registry& reg = Registry::builtin();
    CHECK(reg.get("[[5,1,3]]_2").is_qmds());
    CHECK(reg.get("[[4,2,2]]_2").is_qmds());
    CHECK(reg.get("((5,3,3))_3").is_qmds());
    CHECK(reg.get("((5,4,3))_4").is_qmds());
    CHECK(reg.get("[[6,2,3]]_3").is_qmds());
    CHECK(reg.get("[[6,2,3]]_4").is_qmds());
    CHECK(reg.get("[[10,4,4]]_3").is_qmds());
    CHECK_FALSE(reg.get("((8,4,3))_2").is_qmds());
    CHECK_FALSE(reg.get("((12,16,3))_2").is_qmds());
}

TEST_CASE("every materializable registry entry passes purity and the cross-oracle") {
    const Registry& reg = Registry::builtin();
    for (const std::string& name : reg.names()) {
        if (reg.get(name).optional) continue;
        for (const auto& rep : selfcheck_entry(reg, name, {1e-9, 2, 1})) {
            INFO(name, " ", rep.kind);
            CHECK(rep.pass);
        }
    }
}
