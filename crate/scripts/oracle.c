/* Reference oracle for Lyra2REv2/v3 vector generation.
 * Built from the sph + Lyra2 reference sources bundled in multi-hashing.
 *
 * Modes (hex lines on stdin unless noted):
 *   chain2 | chain3      : 80-byte header hex -> final digest hex
 *   stages2 | stages3    : 80-byte header hex -> TAB-separated per-stage digests
 *   lyra2 | lyra2mod     : 32-byte input hex -> 32-byte output hex
 *   blake | keccak | cubehash | skein | bmw : arbitrary-length hex -> digest hex
 *   sponge <pwd-hex>     : labeled micro-vector dump for a 32-byte pwd
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <stdint.h>

#include "sha3/sph_blake.h"
#include "sha3/sph_keccak.h"
#include "sha3/sph_cubehash.h"
#include "sha3/sph_skein.h"
#include "sha3/sph_bmw.h"
#include "crypto/lyra2.h"
#include "crypto/sponge.h"

static int hexval(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

static int unhex(const char *s, unsigned char *out, int maxlen) {
    int n = 0;
    while (s[0] && s[1] && s[0] != '\n') {
        int h = hexval(s[0]), l = hexval(s[1]);
        if (h < 0 || l < 0) break;
        if (n >= maxlen) return -1;
        out[n++] = (unsigned char)((h << 4) | l);
        s += 2;
    }
    return n;
}

static void phex(const unsigned char *b, int n) {
    for (int i = 0; i < n; i++) printf("%02x", b[i]);
}

static void blake256(const unsigned char *in, int len, unsigned char *out) {
    sph_blake256_context c;
    sph_blake256_set_rounds(14);
    sph_blake256_init(&c);
    sph_blake256(&c, in, len);
    sph_blake256_close(&c, out);
}
static void keccak256(const unsigned char *in, int len, unsigned char *out) {
    sph_keccak256_context c;
    sph_keccak256_init(&c);
    sph_keccak256(&c, in, len);
    sph_keccak256_close(&c, out);
}
static void cubehash256(const unsigned char *in, int len, unsigned char *out) {
    sph_cubehash256_context c;
    sph_cubehash256_init(&c);
    sph_cubehash256(&c, in, len);
    sph_cubehash256_close(&c, out);
}
static void skein256(const unsigned char *in, int len, unsigned char *out) {
    sph_skein256_context c;
    sph_skein256_init(&c);
    sph_skein256(&c, in, len);
    sph_skein256_close(&c, out);
}
static void bmw256(const unsigned char *in, int len, unsigned char *out) {
    sph_bmw256_context c;
    sph_bmw256_init(&c);
    sph_bmw256(&c, in, len);
    sph_bmw256_close(&c, out);
}

/* rev2: blake keccak cube lyra2 skein cube bmw; stages[7] each 32 bytes */
static void chain2(const unsigned char *hdr, unsigned char stages[7][32]) {
    blake256(hdr, 80, stages[0]);
    keccak256(stages[0], 32, stages[1]);
    cubehash256(stages[1], 32, stages[2]);
    LYRA2(stages[3], 32, stages[2], 32, stages[2], 32, 1, 4, 4);
    skein256(stages[3], 32, stages[4]);
    cubehash256(stages[4], 32, stages[5]);
    bmw256(stages[5], 32, stages[6]);
}

/* rev3: blake lyra2mod cube lyra2mod bmw; stages[5] */
static void chain3(const unsigned char *hdr, unsigned char stages[5][32]) {
    blake256(hdr, 80, stages[0]);
    LYRA2_3(stages[1], 32, stages[0], 32, stages[0], 32, 1, 4, 4);
    cubehash256(stages[1], 32, stages[2]);
    LYRA2_3(stages[3], 32, stages[2], 32, stages[2], 32, 1, 4, 4);
    bmw256(stages[3], 32, stages[4]);
}

static void dump_words(const char *label, const uint64_t *w, int n) {
    printf("%s", label);
    for (int i = 0; i < n; i++) printf(" %016llx", (unsigned long long)w[i]);
    printf("\n");
}

/* Replicates LYRA2/LYRA2_3 at T=1,R=C=4 step by step, dumping intermediates. */
static void sponge_trace(const unsigned char pwd[32], int mod) {
    uint64_t state[16];
    uint64_t m[4][4][12];
    unsigned char blocks[128];
    uint64_t params[6] = {32, 32, 32, 1, 4, 4};

    memset(blocks, 0, sizeof blocks);
    memcpy(blocks, pwd, 32);
    memcpy(blocks + 32, pwd, 32);
    memcpy(blocks + 64, params, 48);
    blocks[112] = 0x80;
    blocks[127] ^= 0x01;
    dump_words("absorb_block0", (uint64_t *)blocks, 8);
    dump_words("absorb_block1", (uint64_t *)(blocks + 64), 8);

    initState(state);
    dump_words("init_state", state, 16);
    absorbBlockBlake2Safe(state, (uint64_t *)blocks);
    dump_words("after_absorb0", state, 16);
    absorbBlockBlake2Safe(state, (uint64_t *)(blocks + 64));
    dump_words("bootstrap_end", state, 16);

    reducedSqueezeRow0(state, &m[0][0][0], 4);
    for (int c = 0; c < 4; c++) {
        char lbl[32];
        snprintf(lbl, sizeof lbl, "setup0_m0c%d", c);
        dump_words(lbl, m[0][c], 12);
    }
    dump_words("after_setup0", state, 16);
    reducedDuplexRow1(state, &m[0][0][0], &m[1][0][0], 4);
    reducedDuplexRowSetup(state, &m[1][0][0], &m[0][0][0], &m[2][0][0], 4);
    reducedDuplexRowSetup(state, &m[2][0][0], &m[1][0][0], &m[3][0][0], 4);
    dump_words("after_setup", state, 16);
    for (int r = 0; r < 4; r++)
        for (int c = 0; c < 4; c++) {
            char lbl[32];
            snprintf(lbl, sizeof lbl, "setup_m%dc%d", r, c);
            dump_words(lbl, m[r][c], 12);
        }

    uint64_t prev = 3, rowa = 0, index = 0;
    for (uint64_t row = 0; row < 4; row++) {
        if (mod) {
            index = state[index % 16];
            rowa = state[index % 16] % 4;
            printf("wander_sel %llu %llu\n", (unsigned long long)(index % 16),
                   (unsigned long long)rowa);
        } else {
            rowa = state[0] % 4;
            printf("wander_sel %llu\n", (unsigned long long)rowa);
        }
        reducedDuplexRow(state, &m[prev][0][0], &m[rowa][0][0], &m[row][0][0], 4);
        prev = row;
    }
    dump_words("after_wandering", state, 16);
    printf("final_rowa %llu\n", (unsigned long long)rowa);

    absorbBlock(state, &m[rowa][0][0]);
    dump_words("wrapup_state", state, 16);
    unsigned char k[32];
    squeeze(state, k, 32);
    printf("key ");
    phex(k, 32);
    printf("\n");
}

int main(int argc, char **argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: oracle <mode>\n");
        return 1;
    }
    const char *mode = argv[1];

    if (!strcmp(mode, "sponge")) {
        unsigned char pwd[32];
        if (argc < 3 || unhex(argv[2], pwd, 32) != 32) {
            fprintf(stderr, "sponge needs 64 hex chars\n");
            return 1;
        }
        int mod = argc > 3 && !strcmp(argv[3], "mod");
        sponge_trace(pwd, mod);
        return 0;
    }

    char line[4096];
    unsigned char in[2048];
    while (fgets(line, sizeof line, stdin)) {
        int n = unhex(line, in, sizeof in);
        if (n <= 0) continue;
        if (!strcmp(mode, "chain2") || !strcmp(mode, "stages2")) {
            unsigned char st[7][32];
            if (n != 80) { fprintf(stderr, "need 80 bytes\n"); return 1; }
            chain2(in, st);
            if (!strcmp(mode, "chain2")) {
                phex(st[6], 32);
            } else {
                for (int i = 0; i < 7; i++) {
                    if (i) printf("\t");
                    phex(st[i], 32);
                }
            }
            printf("\n");
        } else if (!strcmp(mode, "chain3") || !strcmp(mode, "stages3")) {
            unsigned char st[5][32];
            if (n != 80) { fprintf(stderr, "need 80 bytes\n"); return 1; }
            chain3(in, st);
            if (!strcmp(mode, "chain3")) {
                phex(st[4], 32);
            } else {
                for (int i = 0; i < 5; i++) {
                    if (i) printf("\t");
                    phex(st[i], 32);
                }
            }
            printf("\n");
        } else {
            unsigned char out[32];
            if (!strcmp(mode, "lyra2")) {
                if (n != 32) return 1;
                LYRA2(out, 32, in, 32, in, 32, 1, 4, 4);
            } else if (!strcmp(mode, "lyra2p")) {
                /* parameterized: argv[2..4] = T R C */
                if (n != 32 || argc < 5) return 1;
                LYRA2(out, 32, in, 32, in, 32,
                      strtoull(argv[2], 0, 10), strtoull(argv[3], 0, 10),
                      strtoull(argv[4], 0, 10));
            } else if (!strcmp(mode, "lyra2mod")) {
                if (n != 32) return 1;
                LYRA2_3(out, 32, in, 32, in, 32, 1, 4, 4);
            } else if (!strcmp(mode, "blake")) {
                blake256(in, n, out);
            } else if (!strcmp(mode, "keccak")) {
                keccak256(in, n, out);
            } else if (!strcmp(mode, "cubehash")) {
                cubehash256(in, n, out);
            } else if (!strcmp(mode, "skein")) {
                skein256(in, n, out);
            } else if (!strcmp(mode, "bmw")) {
                bmw256(in, n, out);
            } else {
                fprintf(stderr, "unknown mode %s\n", mode);
                return 1;
            }
            phex(out, 32);
            printf("\n");
        }
    }
    return 0;
}
