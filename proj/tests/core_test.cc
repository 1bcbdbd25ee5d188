#include <gtest/gtest.h>

#include <random>

#include "osn/core.h"

namespace osn {
namespace {

TEST(InternerTest, SameLabelSameHandle) {
  Interner<ResourceId> r;
  EXPECT_EQ(r.intern("Radiohead"), r.intern("Radiohead"));
  EXPECT_EQ(r.size(), 1u);
}

TEST(InternerTest, HandlesAreDense) {
  Interner<TagId> t;
  EXPECT_EQ(t.intern("a").value, 0u);
  EXPECT_EQ(t.intern("b").value, 1u);
}

TEST(InternerTest, NormalizedLabelsCollide) {
  Interner<UserId> u;
  EXPECT_EQ(u.intern("  A "), u.intern("a"));
  EXPECT_EQ(u.label(u.intern("a")), "a");
}

TEST(InternerTest, EmptyAfterNormalizationIsRejected) {
  Interner<UserId> u;
  try {
    u.intern(" \t ");
    FAIL() << "expected InvalidLabel";
  } catch (const InvalidLabel& e) {
    EXPECT_EQ(e.raw(), " \t ");
  }
  EXPECT_EQ(u.size(), 0u);
}

TEST(InternerTest, DenseAfterManyRandomLabels) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 299);
  Interner<ResourceId> r;
  std::set<std::uint32_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto label = "track " + std::to_string(pick(rng));
    ResourceId id = r.intern(label);
    EXPECT_EQ(id, r.intern(label));
    seen.insert(id.value);
  }
  ASSERT_EQ(seen.size(), r.size());
  EXPECT_EQ(*seen.rbegin(), r.size() - 1);
  for (std::uint32_t i = 0; i < r.size(); ++i) EXPECT_EQ(r.find(r.label(ResourceId{i}))->value, i);
}

Dataset two_bloggers() {
  Dataset ds;
  UserId a = ds.users.intern("a"), b = ds.users.intern("b");
  ResourceId r = ds.resources.intern("r");
  for (UserId u : {a, b}) {
    ds.in_domain_users.insert(u);
    ds.blogroll.nodes.insert(u);
    ds.posts.insert({u, r});
  }
  ds.blogroll.edges.insert({a, b});
  UserId l = ds.users.intern("listener");
  ds.out_domain_users.insert(l);
  ds.assignments.insert({l, ds.tags.intern("rock"), r});
  return ds;
}

TEST(ValidateTest, EmptyDatasetIsValid) { EXPECT_TRUE(validate(Dataset{}).empty()); }

TEST(ValidateTest, ConsistentDatasetIsValid) { EXPECT_TRUE(validate(two_bloggers()).empty()); }

TEST(ValidateTest, SelfLoopIsReported) {
  Dataset ds = two_bloggers();
  UserId a = *ds.users.find("a");
  ds.blogroll.edges.insert({a, a});
  auto v = validate(ds);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "self-loop");
  EXPECT_NE(v[0].detail.find("a (#0) -> a (#0)"), std::string::npos);
}

TEST(ValidateTest, SharedUserAcrossDomains) {
  Dataset ds = two_bloggers();
  ds.out_domain_users.insert(*ds.users.find("a"));
  auto v = validate(ds);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, "domain-overlap");
}

TEST(ValidateTest, DanglingEdge) {
  Dataset ds = two_bloggers();
  UserId c = ds.users.intern("c");
  ds.in_domain_users.insert(c);
  ds.blogroll.edges.insert({*ds.users.find("a"), c});
  auto v = validate(ds);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "dangling-edge");
}

TEST(TupleSetTest, DeduplicatesAndKeepsInsertionOrder) {
  TupleSet<PostTuple> s;
  EXPECT_TRUE(s.insert({UserId{1}, ResourceId{0}}));
  EXPECT_TRUE(s.insert({UserId{0}, ResourceId{0}}));
  EXPECT_FALSE(s.insert({UserId{1}, ResourceId{0}}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.in_order()[0].user.value, 1u);
  EXPECT_EQ(s.sorted().begin()->user.value, 0u);
}

}  // namespace
}  // namespace osn
