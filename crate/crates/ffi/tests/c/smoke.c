#include <stdio.h>
#include <string.h>

#include "qblock.h"

static int expect(int cond, const char *what) {
  if (!cond) {
    fprintf(stderr, "failed: %s (%s)\n", what, qb_last_error());
  }
  return cond ? 0 : 1;
}

int main(void) {
  int bad = 0;
  QbGraph *g = NULL;
  bad += expect(qb_graph_parse("4 4\n0 1\n1 2\n2 3\n3 0\n", QB_FORMAT_EDGE_LIST, &g) == QB_STATUS_OK, "parse");
  QbClass cls;
  bad += expect(qb_classify(g, &cls) == QB_STATUS_OK && cls == QB_CLASS_OUTERPLANAR, "classify");
  QbResult *r = NULL;
  bad += expect(qb_qut(g, false, 1, &r) == QB_STATUS_OK, "qut");
  char *text = qb_result_render(r, QB_RENDER_TEXT);
  bad += expect(strcmp(text, "S^+(2) wr* S^+(2)") == 0, "render");
  char *order = qb_result_shadow_order(r);
  bad += expect(strcmp(order, "8") == 0, "shadow order");
  bad += expect(!qb_result_is_classical(r), "quantum symmetry");
  bad += expect(qb_result_check_aut(r, g) == QB_STATUS_OK, "check aut");
  qb_string_free(text);
  qb_string_free(order);
  qb_result_free(r);
  qb_graph_free(g);

  QbGraph *dup = NULL;
  bad += expect(qb_graph_parse("2 2\n0 1\n0 1\n", QB_FORMAT_EDGE_LIST, &dup) == QB_STATUS_PARSE, "duplicate edge");
  bad += expect(strlen(qb_last_error()) > 0, "error message");
  printf("%s\n", bad ? "FAIL" : "OK");
  return bad;
}
