#include <cstdlib>
#include <filesystem>

#include <gtest/gtest.h>

#include "corpus_scope/dtm.hpp"
#include "corpus_scope/error.hpp"
#include "corpus_scope/stoplist.hpp"
#include "corpus_scope/tokenize.hpp"
#include "corpus_scope/vocabulary.hpp"
#include "oracles/oracles.hpp"
#include "support/files.hpp"
#include "support/generators.hpp"

using namespace corpus_scope;
using namespace corpus_scope::text;
using Strings = std::vector<std::string>;

TEST(Tokenize, SpecExamples) {
  EXPECT_EQ(tokenize("Data-driven Science, 2022!"), (Strings{"data", "driven", "science"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("Machine LEARNING machine"), (Strings{"machine", "learning", "machine"}));
}

TEST(Tokenize, PunctuationAndNumbers) {
  EXPECT_TRUE(tokenize("... -- !!! 123 4,5").empty());
  EXPECT_EQ(tokenize("covid19 3d"), (Strings{"covid19", "3d"}));
  EXPECT_EQ(tokenize("user's can't"), (Strings{"user", "s", "can", "t"}));
}

TEST(Tokenize, UnicodeWords) {
  EXPECT_EQ(tokenize("Ciência de DADOS"), (Strings{"ciência", "de", "dados"}));
  EXPECT_EQ(tokenize("НАУКА о данных"), (Strings{"наука", "о", "данных"}));
  EXPECT_EQ(tokenize("ΔΕΔΟΜΈΝΑ"), (Strings{"δεδομένα"}));
  EXPECT_EQ(tokenize("علم البيانات"), (Strings{"علم", "البيانات"}));
  EXPECT_EQ(tokenize("naïve café"), (Strings{"naïve", "café"}));
  EXPECT_EQ(tokenize("データ・サイエンス"), (Strings{"データ", "サイエンス"}));
}

TEST(Tokenize, MalformedBytesSeparate) {
  EXPECT_EQ(tokenize("ab\xff" "cd"), (Strings{"ab", "cd"}));
}

TEST(Tokenize, IdempotentOnOwnOutput) {
  gen::Gen g(11);
  const Strings pieces = {"Data", "-", "SCIENCE", " ", "2021", "é", "Ω", ",", "x1", "'", "ü"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    for (int i = 0; i < 20; ++i) text += g.pick(pieces);
    const auto once = tokenize(text);
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    EXPECT_EQ(tokenize(joined), once);
    for (const auto& t : once) EXPECT_EQ(tokenize(t), Strings{t});
  }
}

TEST(Stoplist, RemovesFunctionWords) {
  EXPECT_EQ(remove_stopwords({"the", "model", "of", "data"}, default_stoplist()),
            (Strings{"model", "data"}));
  EXPECT_EQ(remove_stopwords({"model", "data"}, default_stoplist()), (Strings{"model", "data"}));
  EXPECT_TRUE(remove_stopwords({"the", "of", "a", "in"}, default_stoplist()).empty());
}

TEST(Stoplist, DefaultListCoversArticlesPronounsPrepositions) {
  const auto& s = default_stoplist();
  for (const char* w : {"a", "an", "the", "he", "she", "it", "they", "we", "of", "in", "on", "for",
                        "with", "and", "to"}) {
    EXPECT_TRUE(s.count(w)) << w;
  }
  EXPECT_FALSE(s.count("learning"));
  EXPECT_FALSE(s.count("data"));
}

TEST(Stoplist, ParseCommentsAndCase) {
  const auto s = parse_stoplist("# header\nThe\n\n  Of  \n# trailing\n");
  EXPECT_EQ(s, (Stoplist{"of", "the"}));
}

TEST(Stoplist, ResolutionOrder) {
  const auto dir = testfs::scratch_dir("stoplist");
  testfs::write_file(dir / "env.txt", "alpha\n");
  testfs::write_file(dir / "explicit.txt", "beta\n");
  ::setenv("CORPUS_SCOPE_STOPLIST", (dir / "env.txt").c_str(), 1);
  EXPECT_EQ(resolve_stoplist(), (Stoplist{"alpha"}));
  EXPECT_EQ(resolve_stoplist(dir / "explicit.txt"), (Stoplist{"beta"}));
  ::unsetenv("CORPUS_SCOPE_STOPLIST");
  EXPECT_EQ(resolve_stoplist(), default_stoplist());
  EXPECT_THROW(load_stoplist(dir / "missing.txt"), IOError);
}

TEST(Sequences, ConcatenateFieldsInOrderAndFilter) {
  Document d;
  d.id = "x";
  d.title = "The Title";
  d.abstract = "an abstract of words";
  d.keywords = {"key one", "key two"};
  const Corpus c({d}, "test");
  const auto seqs = build_sequences(c, default_stoplist());
  ASSERT_EQ(seqs.size(), 1u);
  EXPECT_EQ(seqs[0].doc_id, "x");
  EXPECT_EQ(seqs[0].tokens, (Strings{"title", "abstract", "words", "key", "one", "key", "two"}));
  const auto title_only = build_sequences(c, default_stoplist(), TextFields{true, false, false});
  EXPECT_EQ(title_only[0].tokens, Strings{"title"});
}

TEST(Sequences, ThreadCountDoesNotMatter) {
  gen::Gen g(5);
  const auto words = gen::alphabet(15);
  const Corpus c(gen::documents(g, 40, words), "test");
  EXPECT_EQ(build_sequences(c, default_stoplist(), {}, 1),
            build_sequences(c, default_stoplist(), {}, 7));
}

TEST(Vocabulary, TopByFrequency) {
  const std::vector<TokenSequence> seqs = {
      {"d1", {"a", "a", "a", "b", "c"}}, {"d2", {"a", "a", "b", "b"}}};
  const auto v = build_vocabulary(seqs, 2);
  EXPECT_EQ(v.terms(), (Strings{"a", "b"}));
  EXPECT_EQ(v.frequencies(), (std::vector<std::uint64_t>{5, 3}));
  EXPECT_EQ(v.index_of("b"), 1u);
  EXPECT_FALSE(v.index_of("c").has_value());
}

TEST(Vocabulary, LexicographicTieBreak) {
  const std::vector<TokenSequence> seqs = {{"d1", {"y", "x", "y", "x"}}};
  EXPECT_EQ(build_vocabulary(seqs, 1).terms(), Strings{"x"});
}

TEST(Vocabulary, CapNotBinding) {
  const std::vector<TokenSequence> seqs = {{"d1", {"p", "q", "r"}}};
  EXPECT_EQ(build_vocabulary(seqs, 1000).size(), 3u);
}

TEST(Vocabulary, Errors) {
  EXPECT_THROW(build_vocabulary({}, 10), EmptyCorpusError);
  EXPECT_THROW(build_vocabulary({{"d", {}}}, 10), EmptyCorpusError);
  EXPECT_THROW(build_vocabulary({{"d", {"a"}}}, 0), ConfigError);
}

TEST(Vocabulary, InvariantUnderDocumentOrder) {
  gen::Gen g(17);
  const auto words = gen::alphabet(30);
  for (int trial = 0; trial < 50; ++trial) {
    auto docs = gen::token_docs(g, 20, 40, words);
    const auto before = build_vocabulary(gen::sequences(docs), 10);
    g.shuffle(docs);
    const auto after = build_vocabulary(gen::sequences(docs), 10);
    EXPECT_EQ(before.terms(), after.terms());
    EXPECT_EQ(before.frequencies(), after.frequencies());
  }
}

TEST(Dtm, DirectCounting) {
  const std::vector<TokenSequence> seqs = {{"d1", {"data", "data", "science"}}};
  const Vocabulary v({"data", "science"}, {2, 1}, 10);
  const auto dtm = build_dtm(seqs, v);
  EXPECT_EQ(dtm.at(0, 0), 2u);
  EXPECT_EQ(dtm.at(0, 1), 1u);
  EXPECT_EQ(dtm.row_sums()[0], 3u);
}

TEST(Dtm, OutOfVocabularyIgnored) {
  const std::vector<TokenSequence> seqs = {{"d1", {"data", "other"}}};
  const Vocabulary v({"data"}, {1}, 10);
  const auto dtm = build_dtm(seqs, v);
  EXPECT_EQ(dtm.total(), 1u);
}

TEST(Dtm, DisjointDocumentsAreBlockDiagonal) {
  const std::vector<TokenSequence> seqs = {{"d1", {"a", "a"}}, {"d2", {"b", "b", "b"}}};
  const auto v = build_vocabulary(seqs, 10);
  const auto dtm = build_dtm(seqs, v);
  const auto dense = dtm.to_dense();
  const auto a = static_cast<Eigen::Index>(*v.index_of("a"));
  const auto b = static_cast<Eigen::Index>(*v.index_of("b"));
  EXPECT_EQ(dense(0, a), 2.0);
  EXPECT_EQ(dense(0, b), 0.0);
  EXPECT_EQ(dense(1, a), 0.0);
  EXPECT_EQ(dense(1, b), 3.0);
  EXPECT_EQ(dtm.total(), 5u);
}

TEST(Dtm, EmptyVocabularyRejected) {
  EXPECT_THROW(build_dtm({{"d", {"a"}}}, Vocabulary{}), ConfigError);
}

TEST(Dtm, CompressedViewsAgree) {
  const auto dtm = SparseDTM::from_dense({{1, 0, 2}, {0, 0, 3}, {4, 5, 0}});
  EXPECT_EQ(dtm.nonzeros(), 5u);
  std::vector<std::vector<std::uint64_t>> from_rows(3, std::vector<std::uint64_t>(3, 0));
  std::vector<std::vector<std::uint64_t>> from_cols = from_rows;
  for (std::size_t i = 0; i < 3; ++i)
    for (auto k = dtm.row_offsets()[i]; k < dtm.row_offsets()[i + 1]; ++k)
      from_rows[i][dtm.col_indices()[k]] = dtm.values()[k];
  for (std::size_t j = 0; j < 3; ++j)
    for (auto k = dtm.col_offsets()[j]; k < dtm.col_offsets()[j + 1]; ++k)
      from_cols[dtm.row_indices()[k]][j] = dtm.col_values()[k];
  EXPECT_EQ(from_rows, from_cols);
}

TEST(Dtm, DropEmptyLines) {
  const auto dtm = SparseDTM::from_dense({{1, 0, 0}, {0, 0, 0}, {2, 0, 1}});
  std::vector<std::string> rows, cols;
  const auto kept = dtm.without_empty_lines(&rows, &cols);
  EXPECT_EQ(rows, Strings{"d1"});
  EXPECT_EQ(cols, Strings{"t1"});
  EXPECT_EQ(kept.n_rows(), 2u);
  EXPECT_EQ(kept.n_cols(), 2u);
  EXPECT_EQ(kept.total(), dtm.total());
}

TEST(Dtm, MatrixMarketAndIndex) {
  const auto dtm = SparseDTM::from_dense({{1, 0}, {0, 2}});
  const auto mm = to_matrix_market(dtm);
  EXPECT_EQ(mm, "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 1\n2 2 2\n");
  const auto idx = to_index_csv(dtm);
  EXPECT_EQ(idx, "axis,index,label\ndoc,1,d0\ndoc,2,d1\nterm,1,t0\nterm,2,t1\n");
}

// Property: sparse marginals equal a dense nested-loop recount.
TEST(DtmProperties, MarginalsMatchDenseRecount) {
  gen::Gen g(23);
  const auto words = gen::alphabet(25);
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = gen::token_docs(g, 15, 30, words);
    const auto seqs = gen::sequences(docs);
    std::size_t tokens = 0;
    for (const auto& d : docs) tokens += d.size();
    if (tokens == 0) continue;
    const auto vocab = build_vocabulary(seqs, static_cast<std::size_t>(g.integer(1, 25)));
    const auto dtm = build_dtm(seqs, vocab);
    const auto r = oracle::dense_recount(docs, vocab.terms());
    EXPECT_EQ(dtm.row_sums(), r.row_sums);
    EXPECT_EQ(dtm.col_sums(), r.col_sums);
    EXPECT_EQ(dtm.total(), r.total);
    for (std::size_t i = 0; i < docs.size(); ++i)
      for (std::size_t j = 0; j < vocab.size(); ++j) EXPECT_EQ(dtm.at(i, j), r.cells[i][j]);
  }
}
