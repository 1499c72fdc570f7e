#include "voteelicit/trees.hpp"

#include <gtest/gtest.h>

using namespace voteelicit;

namespace {

// Plurality m=2 vote space is {a>b, b>a}.
CoarseTreeNode leaf() { return {}; }

CoarseTreeNode ask(int agent, std::vector<CoarseTreeNode> children) { return {agent, std::move(children)}; }

} // namespace

TEST(CoarseTree, AgreeingPairDecides) {
    // Ask voters 0 and 1; stop if they agree, else ask voter 2.
    auto tree = ask(0, {ask(1, {leaf(), ask(2, {leaf(), leaf()})}), ask(1, {ask(2, {leaf(), leaf()}), leaf()})});
    EXPECT_TRUE(validate_coarse_tree(tree, Protocol::Plurality, 2, 3));
}

TEST(CoarseTree, EmptyTreeIsInvalid) {
    EXPECT_FALSE(validate_coarse_tree(leaf(), Protocol::Plurality, 2, 2));
    EXPECT_FALSE(validate_coarse_tree(leaf(), Protocol::Borda, 3, 3));
    EXPECT_TRUE(validate_coarse_tree(leaf(), Protocol::Borda, 1, 3));
}

TEST(CoarseTree, RepeatedAgentIsInvalid) {
    auto tree = ask(0, {ask(0, {leaf(), leaf()}), ask(0, {leaf(), leaf()})});
    EXPECT_FALSE(validate_coarse_tree(tree, Protocol::Plurality, 2, 1));
}

TEST(CoarseTree, MaterializedPoliciesAreValid) {
    for (Protocol p : kAllProtocols) {
        for (int n = 1; n <= 3; ++n) {
            auto tree = materialize_coarse_tree(fixed_order_policy(n), p, 3, n);
            EXPECT_TRUE(validate_coarse_tree(tree, p, 3, n)) << protocol_name(p);
        }
    }
}

TEST(CoarseTree, GuardTrips) {
    EXPECT_THROW(materialize_coarse_tree(fixed_order_policy(4), Protocol::Borda, 4, 4, StopRule::TiebreakWinner, 100),
                 BudgetExceeded);
}

TEST(FineTree, ExampleGameTreeIsValidButDivulging) {
    auto tree = materialize_fine_tree(theorem9_fine_policy(), Protocol::Approval, 3, 2);
    EXPECT_TRUE(validate_fine_tree(tree, Protocol::Approval, 3, 2));
    EXPECT_FALSE(is_nondivulging(tree));
}

TEST(FineTree, FixedOrderIsNondivulging) {
    for (Protocol p : {Protocol::Approval, Protocol::Plurality, Protocol::Borda, Protocol::Copeland}) {
        auto tree = materialize_fine_tree(fixed_order_fine_policy(p, 3, 2), p, 3, 2);
        EXPECT_TRUE(validate_fine_tree(tree, p, 3, 2)) << protocol_name(p);
        EXPECT_TRUE(is_nondivulging(tree)) << protocol_name(p);
    }
}

TEST(FineTree, SingleVoterIsNondivulging) {
    auto policy = [](std::span<const FineStep> h) -> std::optional<FineQuery> {
        // Adaptive on the voter's own answers only.
        if (h.empty()) return FineQuery::approve(0, 1);
        if (h.size() == 1) return FineQuery::approve(0, h[0].answer.approved ? 0 : 2);
        return std::nullopt;
    };
    auto tree = materialize_fine_tree(policy, Protocol::Approval, 3, 1, StopRule::WinnerSet);
    EXPECT_TRUE(is_nondivulging(tree));
}

TEST(FineTree, OwnAnswerAdaptivityIsNondivulging) {
    // Each voter's second question depends on its own first answer.
    auto policy = [](std::span<const FineStep> h) -> std::optional<FineQuery> {
        std::vector<FineQuery> script{FineQuery::approve(0, 0), FineQuery::approve(1, 0)};
        for (int v = 0; v < 2; ++v) {
            for (const auto& s : h)
                if (s.query == FineQuery::approve(v, 0))
                    script.push_back(FineQuery::approve(v, s.answer.approved ? 1 : 2));
        }
        for (int v = 0; v < 2; ++v)
            for (int c = 0; c < 3; ++c) script.push_back(FineQuery::approve(v, c));
        for (const auto& q : script) {
            bool asked = std::any_of(h.begin(), h.end(), [&](const FineStep& s) { return s.query == q; });
            if (!asked) return q;
        }
        return std::nullopt;
    };
    auto tree = materialize_fine_tree(policy, Protocol::Approval, 3, 2);
    EXPECT_TRUE(validate_fine_tree(tree, Protocol::Approval, 3, 2));
    EXPECT_TRUE(is_nondivulging(tree));
}

TEST(FineTree, RandomFixedOrderPoliciesAreNondivulging) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto tree = materialize_fine_tree(random_fixed_order_fine_policy(Protocol::Approval, 3, 2, seed),
                                          Protocol::Approval, 3, 2);
        EXPECT_TRUE(validate_fine_tree(tree, Protocol::Approval, 3, 2));
        EXPECT_TRUE(is_nondivulging(tree));
    }
}

TEST(FineTree, TamperedPartitionIsInvalid) {
    auto tree = materialize_fine_tree(fixed_order_fine_policy(Protocol::Approval, 2, 2), Protocol::Approval, 2, 2);
    ASSERT_TRUE(tree.agent);
    auto bad = tree;
    bad.partition[0].push_back(bad.partition[1].front());
    EXPECT_FALSE(validate_fine_tree(bad, Protocol::Approval, 2, 2));
    auto stub = tree;
    stub.children[0] = FineTreeNode{};
    EXPECT_FALSE(validate_fine_tree(stub, Protocol::Approval, 2, 2));
}
