#include <gtest/gtest.h>

#include <sstream>

#include "amsim/gamf/framework.hpp"

using namespace amsim::gamf;

namespace {

AdapterDescriptor generator(std::string id, std::set<std::string> types, bool prot = false) {
  return {std::move(id), AdapterKind::event_generator, "target", std::move(types), prot};
}

AdapterDescriptor extractor(std::string id, std::string facet = "metrics") {
  return {std::move(id), AdapterKind::metric_extractor, std::move(facet), {}, false};
}

}  // namespace

TEST(Knowledge, EmptyStoreAnswersNothing) {
  Knowledge k;
  EXPECT_TRUE(k.peek({}).empty());
  EXPECT_TRUE(k.query(KnowledgeFilter::of_type("A")).empty());
}

TEST(Knowledge, HalfOpenWindowSelectsExactlyTheInnerEvent) {
  Knowledge k;
  for (TimeMs t : {1, 2, 3}) k.append(Record{RecordKind::event, "A", t, 0, {}, 0});
  KnowledgeFilter f = KnowledgeFilter::of_type("A");
  f.from = 2;
  f.to = 3;
  const auto r = k.peek(f);
  // brute force over all stored records
  std::vector<TimeMs> expected;
  for (const auto& rec : k.peek({})) {
    if (rec.timestamp >= 2 && rec.timestamp < 3) expected.push_back(rec.timestamp);
  }
  ASSERT_EQ(r.size(), expected.size());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].timestamp, 2);
}

TEST(Knowledge, ConsumingQueryIsPerCallerAndPerType) {
  Knowledge k;
  k.append(Record{RecordKind::event, "A", 1, 0, {}, 0});
  k.append(Record{RecordKind::event, "B", 1, 0, {}, 0});
  KnowledgeFilter f = KnowledgeFilter::of_type("A");
  f.consume_since_last = true;
  EXPECT_EQ(k.query(f, "x").size(), 1u);
  EXPECT_TRUE(k.query(f, "x").empty());
  EXPECT_EQ(k.query(f, "y").size(), 1u);
  KnowledgeFilter fb = KnowledgeFilter::of_type("B");
  fb.consume_since_last = true;
  EXPECT_EQ(k.query(fb, "x").size(), 1u);
  k.append(Record{RecordKind::event, "A", 2, 0, {}, 0});
  EXPECT_EQ(k.query(f, "x").size(), 1u);
  EXPECT_THROW(k.query(f, ""), std::invalid_argument);
}

TEST(Knowledge, DumpIsUrlEncoded) {
  Knowledge k;
  k.append(Record{RecordKind::event, "a b", 5, 0, {{"k", "v,w"}}, 0});
  std::ostringstream out;
  k.dump(out);
  EXPECT_NE(out.str().find("a%20b"), std::string::npos);
  EXPECT_NE(out.str().find("k=v%2Cw"), std::string::npos);
  EXPECT_EQ(url_encode("x=y&z"), "x%3Dy%26z");
}

TEST(Framework, RecordWithoutTriggersStoresOnly) {
  Framework fw;
  fw.register_adapter(generator("g", {"lookup_completed"}));
  const auto fired = fw.record_event("g", {"lookup_completed", 100, {}});
  EXPECT_TRUE(fired.empty());
  EXPECT_EQ(fw.knowledge().size(), 1u);
}

TEST(Framework, OnEventTriggerFiresOnceAtEventTime) {
  Framework fw;
  fw.register_adapter(generator("g", {"peer_access_failed"}));
  std::vector<TimeMs> at;
  fw.register_adapter(extractor("x"), [&](FiringContext& c) { at.push_back(c.now); });
  fw.add_trigger("x", OnEvent{"peer_access_failed"});
  fw.record_event("g", {"peer_access_failed", 5, {}});
  EXPECT_EQ(at, std::vector<TimeMs>{5});
}

TEST(Framework, SecondClaimOfATypeIsRejected) {
  Framework fw;
  fw.register_adapter(generator("g1", {"X"}));
  EXPECT_THROW(fw.register_adapter(generator("g2", {"X"})), ClaimError);
  EXPECT_FALSE(fw.contains("g2"));
  EXPECT_EQ(fw.knowledge().size(), 0u);
  fw.register_adapter(generator("g3", {}));
  EXPECT_THROW(fw.record_event("g3", {"X", 0, {}}), ClaimError);
}

TEST(Framework, RegistryAndProtection) {
  Framework fw;
  fw.register_adapter(extractor("a"));
  fw.unregister("a");
  EXPECT_EQ(fw.adapter_count(), 0u);

  fw.register_adapter(generator("p", {"E"}, true));
  EXPECT_THROW(fw.unregister("p"), ProtectionError);
  EXPECT_TRUE(fw.contains("p"));
  EXPECT_THROW(fw.register_adapter(generator("p", {})), RegistryError);

  fw.register_adapter(extractor("m1", "nemo"));
  fw.register_adapter(extractor("m2", "nemo"));
  EXPECT_EQ(fw.facet("nemo").size(), 2u);
}

TEST(Framework, PeriodicTriggerCatchesUpOnEveryPeriod) {
  Framework fw;
  std::vector<TimeMs> at;
  fw.register_adapter(extractor("x"), [&](FiringContext& c) { at.push_back(c.now); });
  fw.add_trigger("x", Periodic{2000});
  fw.advance(6000);
  std::vector<TimeMs> expected;
  for (TimeMs t = 2000; t <= 6000; t += 2000) expected.push_back(t);
  EXPECT_EQ(at, expected);
  EXPECT_EQ(fw.next_due(), 8000);
  EXPECT_THROW(fw.advance(5000), TimeRegressionError);
}

TEST(Framework, NoTriggersNoFirings) {
  Framework fw;
  EXPECT_TRUE(fw.advance(10000).empty());
}

TEST(Framework, SimultaneousTriggersFireInAdapterIdOrder) {
  auto run = [] {
    Framework fw;
    std::vector<std::string> order;
    for (const char* id : {"policy.b", "extract.a", "policy.a"}) {
      fw.register_adapter(extractor(id), [&order](FiringContext& c) { order.push_back(c.adapter_id); });
      fw.add_trigger(id, Periodic{1000});
    }
    fw.advance(1000);
    return std::make_pair(order, fw.firing_log());
  };
  const auto a = run();
  EXPECT_EQ(a.first, (std::vector<std::string>{"extract.a", "policy.a", "policy.b"}));
  EXPECT_EQ(a.second, run().second);
}

TEST(Framework, CustomTriggerSeesLatestRecord) {
  Framework fw;
  fw.register_adapter(generator("g", {"v"}));
  int fired = 0;
  fw.register_adapter(extractor("c"), [&](FiringContext&) { ++fired; });
  fw.add_trigger("c", Custom{[](TimeMs, const Knowledge& k, const Record* r) {
                   return r != nullptr && k.count_of("v") == 2;
                 }});
  fw.record_event("g", {"v", 1, {}});
  EXPECT_EQ(fired, 0);
  fw.record_event("g", {"v", 2, {}});
  EXPECT_EQ(fired, 1);
}

TEST(Framework, MetricsOnlyFromRegisteredExtractors) {
  Framework fw;
  fw.register_adapter(extractor("x"));
  fw.record_metric("x", {"nemo.stabilize", 10, 3.0, {}});
  EXPECT_THROW(fw.record_metric("nobody", {"m", 10, 1.0, {}}), RegistryError);
  const auto r = fw.query(KnowledgeFilter::of_type("nemo.stabilize"));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].is_metric());
  EXPECT_EQ(r[0].value, 3.0);
}
