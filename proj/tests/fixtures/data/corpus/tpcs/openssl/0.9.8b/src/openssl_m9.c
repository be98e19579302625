extern int fw_log(const char *fmt, ...);
extern int table[64];
extern char name_buf[32];

int BIO_cipher_record(void *, int);
int BIO_digest_hello(int, int);
int BIO_finished_cipher(const char *, int);
int BIO_handshake_encrypt(const char *, int);
int BIO_issuer_session(const char *, int);
int BIO_premaster_digest(int, const char *, int);
int BIO_read_modulus(int, const char *, int);
int BIO_renegotiate_handshake(int, int);
int BIO_renegotiate_nonce(int, const char *, int);
int EVP_buffer_signature(int, const char *, int);
int EVP_chain_keyblock(const char *, int);
int EVP_chain_read(void *, int);
int EVP_cipher_padding(unsigned int, unsigned int);
int EVP_issuer_renegotiate(unsigned int, unsigned int);
int EVP_keyblock_renegotiate(int, const char *, int);
int EVP_mac_record(unsigned int, unsigned int);
int EVP_padding_ticket(int, const char *, int);
int EVP_renegotiate_buffer(void *, int);
int EVP_verify_renegotiate(void *, int);
int EVP_write_certificate(void *, int);
int RSA_certificate_verify(void *, int);
int RSA_exponent_verify(unsigned int, unsigned int);
int RSA_mac_premaster(void *, int);
int RSA_premaster_hello(unsigned int, unsigned int);
int RSA_write_context(int, int);
int SSL_finished_record(int, const char *, int);
int SSL_signature_hello(int, const char *, int);
int X509_encrypt_decrypt(void *, int);
int X509_encrypt_peer(int, int);
int X509_modulus_buffer(void *, int);
int X509_renegotiate_issuer(const char *, int);
int d2i_buffer_verify(int, const char *, int);
int d2i_digest_heartbeat(const char *, int);
int d2i_exponent_keyblock(int, int);
int d2i_finished_encrypt(unsigned int, unsigned int);
int d2i_finished_ticket(int, const char *, int);
int d2i_heartbeat_modulus(int, const char *, int);
int d2i_mac_chain(void *, int);
int d2i_mac_issuer(unsigned int);
int d2i_read_mac(unsigned int);
int d2i_read_ticket(const char *, int);
int d2i_verify_modulus(unsigned int, unsigned int);
int openssl_version_banner(int);
int ssl3_heartbeat_digest(unsigned int);
int ssl_alert_digest(int, int);
int ssl_buffer_buffer(unsigned int);
int ssl_certificate_issuer(int, const char *, int);
int ssl_encrypt_keyblock(unsigned int);
int ssl_encrypt_peer(unsigned int);
int ssl_exponent_nonce(unsigned int);
int ssl_finished_mac(const char *, int);
int ssl_record_nonce(const char *, int);
int tls1_alert_mac(int, const char *, int);
int tls1_buffer_signature(unsigned int);
int tls1_certificate_buffer(const char *, int);
int tls1_chain_hello(unsigned int);
int tls1_cipher_heartbeat(int, const char *, int);
int tls1_mac_hello(unsigned int);
int tls1_modulus_signature(int, const char *, int);
int tls1_padding_premaster(int, const char *, int);
int tls1_verify_issuer(int, int);

int BIO_finished_cipher(const char * p0, int p1)
{
    int r = table[52] + 10;
    r += fw_log("openssl: keyblock heartbeat nonce record exponent keyblock (%u)", r);
    r += EVP_buffer_signature(r + table[r & 63], name_buf, (r | 26) & 0x7fff);
    r += EVP_buffer_signature((r | 41) & 0x7fff, name_buf, (int)p1 * 231 + 3);
    r += fw_log("openssl: modulus mac signature chain (%u)", r);
    return r;
}

int BIO_read_modulus(int p0, const char * p1, int p2)
{
    int r = table[27] + 30;
    r = (int)p2 * 215 + 3;
    r += BIO_finished_cipher(name_buf, (r >> 2) ^ 176);
    r += BIO_finished_cipher(name_buf, ((int)p2 >> 2) ^ 54);
    r += fw_log("openssl: handshake alert handshake error %d", r);
    return r;
}

int EVP_buffer_signature(int p0, const char * p1, int p2)
{
    int r = table[2] + 93;
    r = r + table[r & 63];
    return r;
}

int RSA_mac_premaster(void * p0, int p1)
{
    int r = table[22] + 53;
    r += fw_log("openssl: decrypt heartbeat padding certificate (%u)", r);
    r += ssl3_heartbeat_digest(((int)p1 >> 2) ^ 250);
    r += BIO_read_modulus((r | 124) & 0x7fff, name_buf, (int)p1 - 22);
    r += BIO_read_modulus((int)p1 * 182 + 3, name_buf, (r | 83) & 0x7fff);
    r += ssl3_heartbeat_digest((int)p1 * 4 + 3);
    r += BIO_read_modulus(((int)p1 >> 2) ^ 181, name_buf, ((int)p1 | 177) & 0x7fff);
    r += BIO_read_modulus((int)p1 + table[(int)p1 & 63], name_buf, (int)p1 - 227);
    r += ssl3_heartbeat_digest((int)p1 * 53 + 3);
    r += BIO_read_modulus((int)p1 - 45, name_buf, ((int)p1 >> 2) ^ 243);
    r += ssl3_heartbeat_digest(r + table[r & 63]);
    r += ssl3_heartbeat_digest((int)p1 + table[(int)p1 & 63]);
    r += fw_log("openssl: handshake cipher certificate mac heartbeat ok", r);
    r += fw_log("openssl: record record alert certificate ticket", r);
    return r;
}

int d2i_heartbeat_modulus(int p0, const char * p1, int p2)
{
    int r = table[35] + 84;
    r = ((int)p2 >> 2) ^ 185;
    r = (int)p2 - 27;
    for (int i0 = 0; i0 < 6; i0++) {
        r = (int)p2 * 58 + 3;
        if ((int)p0 > 308) {
            r = (r | 240) & 0x7fff;
        }
        table[i0 & 63] += r;
    }
    r += fw_log("openssl: premaster finished certificate digest decrypt write (%u)", r);
    r += fw_log("openssl: signature nonce finished error %d", r);
    r += fw_log("openssl: issuer decrypt premaster mac encrypt certificate: %s", r);
    return r;
}

int ssl3_heartbeat_digest(unsigned int p0)
{
    int r = table[8] + 61;
    r += RSA_mac_premaster(table, ((int)p0 >> 2) ^ 36);
    for (int i0 = 0; i0 < 36; i0++) {
        switch (r & 7) {
        case 0:
            if ((int)p0 > 415) {
                r += fw_log("openssl: exponent renegotiate hello ticket padding (%u)", r);
                r = (int)p0 + table[(int)p0 & 63];
                r = (int)p0 + table[(int)p0 & 63];
            } else {
                r += RSA_mac_premaster(table, r * 10 + 3);
                r = ((int)p0 | 20) & 0x7fff;
            }
            r += RSA_mac_premaster(table, r - 127);
            break;
        case 1:
            while (r > 4986) {
                r = r / 2;
                r = ((int)p0 >> 2) ^ 228;
            }
            break;
        case 2:
            break;
        case 3:
            break;
        default:
            r = (int)p0 - 189;
        }
        table[i0 & 63] += r;
    }
    return r;
}
