#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypersum/crypto.hpp"
#include "hypersum/errors.hpp"
#include "hypersum/proof_system.hpp"

using namespace hypersum;

namespace {

ProvingSecret test_secret(std::uint64_t seed) {
    Prng rng(seed);
    ProvingSecret secret;
    rng.fill_bytes(secret);
    return secret;
}

struct HonestCase {
    SummationWitness witness;
    SummationStatement statement;
};

HonestCase honest_case(Prng& rng) {
    HonestCase c;
    c.witness.sum = prng_draw(rng);
    c.witness.salt = prng_draw(rng);
    c.witness.salt_next = prng_draw(rng);
    c.witness.sum_pair = prng_draw(rng);
    c.witness.salt_pair = prng_draw(rng);
    c.statement.sum_hash = commit(c.witness.sum, c.witness.salt);
    c.statement.sum_pair_hash = commit(c.witness.sum_pair, c.witness.salt_pair);
    c.statement.sum_next_hash =
        commit(c.witness.sum + c.witness.sum_pair, c.witness.salt_next);
    return c;
}

// Re-derivation of the constraint through the verification surface only,
// kept separate from statement_holds on purpose.
bool oracle_statement_holds(const SummationWitness& w, const SummationStatement& s) {
    if (!verify_commitment(s.sum_hash, w.sum, w.salt)) return false;
    if (!verify_commitment(s.sum_pair_hash, w.sum_pair, w.salt_pair)) return false;
    return verify_commitment(s.sum_next_hash, w.sum + w.sum_pair, w.salt_next);
}

}  // namespace

TEST_CASE("honest witnesses satisfy the statement") {
    Prng rng(100);
    for (int i = 0; i < 50; ++i) {
        const HonestCase c = honest_case(rng);
        CHECK(statement_holds(c.witness, c.statement));
    }
}

TEST_CASE("perturbed witnesses fail") {
    Prng rng(101);
    HonestCase c = honest_case(rng);

    SummationWitness bumped = c.witness;
    bumped.sum_pair += 1;
    CHECK_FALSE(statement_holds(bumped, c.statement));

    SummationWitness stale = c.witness;
    stale.salt_next = prng_draw(rng);  // statement still binds the old salt
    CHECK_FALSE(statement_holds(stale, c.statement));

    SummationWitness wrong_salt = c.witness;
    wrong_salt.salt += 1;
    CHECK_FALSE(statement_holds(wrong_salt, c.statement));
}

TEST_CASE("defensive overflow check") {
    SummationWitness w;
    w.sum = ~u128{0};
    w.sum_pair = 1;
    CHECK_THROWS_AS(statement_holds(w, SummationStatement{}), SumOverflow);
}

TEST_CASE("statement_holds agrees with the independent oracle") {
    Prng rng(102);
    for (int i = 0; i < 10000; ++i) {
        HonestCase c = honest_case(rng);
        // half the cases get one field perturbed
        if (i % 2 == 1) {
            switch (i % 10) {
                case 1: c.witness.sum += 1; break;
                case 3: c.witness.salt += 1; break;
                case 5: c.witness.sum_pair += 1; break;
                case 7: c.witness.salt_pair += 1; break;
                default: c.witness.salt_next += 1; break;
            }
        }
        CHECK(statement_holds(c.witness, c.statement) ==
              oracle_statement_holds(c.witness, c.statement));
    }
}

TEST_CASE("prove and verify round-trip") {
    Prng rng(103);
    const ProvingSecret key = test_secret(1);
    const HonestCase c = honest_case(rng);

    const Proof proof = prove(c.witness, c.statement, key);
    CHECK(verify_proof(proof, c.statement, key));

    // a different statement does not verify under the same proof
    const HonestCase other = honest_case(rng);
    CHECK_FALSE(verify_proof(proof, other.statement, key));

    // a different session secret rejects the proof
    CHECK_FALSE(verify_proof(proof, c.statement, test_secret(2)));
}

TEST_CASE("the prover refuses a violated statement") {
    Prng rng(104);
    HonestCase c = honest_case(rng);
    c.witness.sum += 1;
    CHECK_THROWS_AS(prove(c.witness, c.statement, test_secret(1)), StatementViolated);
}

TEST_CASE("re-binding a proof to altered publics fails verification") {
    Prng rng(105);
    const ProvingSecret key = test_secret(1);
    const HonestCase c = honest_case(rng);
    const Proof proof = prove(c.witness, c.statement, key);

    SummationStatement altered = c.statement;
    altered.sum_next_hash.digest[0] ^= 0x01;
    CHECK_FALSE(verify_proof(proof, altered, key));

    Proof rebound = proof;
    rebound.bound_publics = altered;
    CHECK_FALSE(verify_proof(rebound, altered, key));
    CHECK_FALSE(verify_proof(rebound, c.statement, key));
}

TEST_CASE("fabricated tags never verify") {
    Prng rng(106);
    const ProvingSecret key = test_secret(1);
    const HonestCase c = honest_case(rng);
    Proof forged;
    forged.bound_publics = c.statement;
    for (int i = 0; i < 10000; ++i) {
        rng.fill_bytes(forged.tag);
        CHECK_FALSE(verify_proof(forged, c.statement, key));
    }
}

TEST_CASE("proof serialization round-trips") {
    Prng rng(107);
    const HonestCase c = honest_case(rng);
    const Proof proof = prove(c.witness, c.statement, test_secret(3));
    const auto bytes = proof.serialize();
    CHECK(Proof::deserialize(bytes) == proof);
    CHECK(proof.hex().size() == 256);
}
