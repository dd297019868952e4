#include "polyq/parser.hpp"

#include <cctype>
#include <charconv>
#include <set>

namespace polyq {

namespace {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    TokenKind kind = TokenKind::End;
    SourceSpan span;
    double number = 0.0;
    bool is_integer = false;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view source) : source_(source) {}

    Token next() {
        skip_whitespace();
        if (pos_ >= source_.size()) {
            return Token{TokenKind::End, {pos_, pos_}};
        }
        const std::size_t start = pos_;
        const char c = source_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return lex_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < source_.size() &&
                   (std::isalnum(static_cast<unsigned char>(source_[pos_])) ||
                    source_[pos_] == '_')) {
                ++pos_;
            }
            Token token{TokenKind::Ident, {start, pos_}};
            token.text = std::string(source_.substr(start, pos_ - start));
            return token;
        }
        ++pos_;
        const SourceSpan span{start, pos_};
        switch (c) {
        case '+': return Token{TokenKind::Plus, span};
        case '-': return Token{TokenKind::Minus, span};
        case '*': return Token{TokenKind::Star, span};
        case '^': return Token{TokenKind::Caret, span};
        case '(': return Token{TokenKind::LParen, span};
        case ')': return Token{TokenKind::RParen, span};
        default:
            if (std::isprint(static_cast<unsigned char>(c))) {
                throw ParseError(std::string("unsupported operator '") + c + "'", start, pos_);
            }
            throw ParseError("unexpected byte in input", start, pos_);
        }
    }

private:
    void skip_whitespace() {
        while (pos_ < source_.size() &&
               std::isspace(static_cast<unsigned char>(source_[pos_]))) {
            ++pos_;
        }
    }

    Token lex_number() {
        const std::size_t start = pos_;
        while (pos_ < source_.size() && std::isdigit(static_cast<unsigned char>(source_[pos_]))) {
            ++pos_;
        }
        bool is_integer = true;
        if (pos_ < source_.size() && source_[pos_] == '.') {
            is_integer = false;
            ++pos_;
            if (pos_ >= source_.size() ||
                !std::isdigit(static_cast<unsigned char>(source_[pos_]))) {
                throw ParseError("malformed number: expected digits after '.'", start, pos_);
            }
            while (pos_ < source_.size() &&
                   std::isdigit(static_cast<unsigned char>(source_[pos_]))) {
                ++pos_;
            }
        }
        Token token{TokenKind::Number, {start, pos_}};
        token.is_integer = is_integer;
        const char* first = source_.data() + start;
        const char* last = source_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, token.number);
        if (ec != std::errc{} || ptr != last) {
            throw ParseError("malformed number", start, pos_);
        }
        return token;
    }

    std::string_view source_;
    std::size_t pos_ = 0;
};

// Exponent chains fold at parse time, so the cap only guards against
// absurd literals like 2^999999; polynomial expansion has its own guard.
constexpr long long kMaxExponent = 1 << 20;

class Parser {
public:
    explicit Parser(std::string_view source) : lexer_(source) { advance(); }

    ExprNode parse_expression() {
        ExprNode node = parse_term();
        while (current_.kind == TokenKind::Plus || current_.kind == TokenKind::Minus) {
            const ExprKind kind =
                current_.kind == TokenKind::Plus ? ExprKind::Add : ExprKind::Sub;
            advance();
            ExprNode rhs = parse_term();
            ExprNode parent;
            parent.kind = kind;
            parent.span = {node.span.begin, rhs.span.end};
            parent.children.push_back(std::move(node));
            parent.children.push_back(std::move(rhs));
            node = std::move(parent);
        }
        return node;
    }

    void expect_end() {
        if (current_.kind != TokenKind::End) {
            throw ParseError("unexpected trailing input", current_.span.begin,
                             current_.span.end);
        }
    }

private:
    void advance() { current_ = lexer_.next(); }

    ExprNode parse_term() {
        ExprNode node = parse_power();
        while (current_.kind == TokenKind::Star) {
            advance();
            ExprNode rhs = parse_power();
            ExprNode parent;
            parent.kind = ExprKind::Mul;
            parent.span = {node.span.begin, rhs.span.end};
            parent.children.push_back(std::move(node));
            parent.children.push_back(std::move(rhs));
            node = std::move(parent);
        }
        return node;
    }

    ExprNode parse_power() {
        ExprNode base = parse_unary();
        if (current_.kind != TokenKind::Caret) {
            return base;
        }
        advance();
        auto [exponent, span_end] = parse_exponent();
        ExprNode node;
        node.kind = ExprKind::Pow;
        node.span = {base.span.begin, span_end};
        node.exponent = static_cast<int>(exponent);
        node.children.push_back(std::move(base));
        return node;
    }

    // Exponents must be non-negative integer literals; right-associative
    // chains of literals (x^2^3) fold to a single integer.
    std::pair<long long, std::size_t> parse_exponent() {
        if (current_.kind == TokenKind::Minus) {
            throw ParseError("exponent must be a non-negative integer literal",
                             current_.span.begin, current_.span.end);
        }
        if (current_.kind != TokenKind::Number || !current_.is_integer) {
            throw ParseError("exponent must be a non-negative integer literal",
                             current_.span.begin, current_.span.end);
        }
        const long long base = static_cast<long long>(current_.number);
        std::size_t end = current_.span.end;
        advance();
        if (current_.kind != TokenKind::Caret) {
            return {base, end};
        }
        advance();
        auto [exponent, chain_end] = parse_exponent();
        long long value = 1;
        for (long long i = 0; i < exponent; ++i) {
            value *= base;
            if (value > kMaxExponent) {
                throw ParseError("exponent too large", chain_end, chain_end);
            }
        }
        return {value, chain_end};
    }

    ExprNode parse_unary() {
        if (current_.kind == TokenKind::Minus) {
            const std::size_t begin = current_.span.begin;
            advance();
            ExprNode child = parse_unary();
            ExprNode node;
            node.kind = ExprKind::Neg;
            node.span = {begin, child.span.end};
            node.children.push_back(std::move(child));
            return node;
        }
        return parse_atom();
    }

    ExprNode parse_atom() {
        switch (current_.kind) {
        case TokenKind::Number: {
            ExprNode node;
            node.kind = ExprKind::Number;
            node.span = current_.span;
            node.number = current_.number;
            advance();
            return node;
        }
        case TokenKind::Ident: {
            ExprNode node;
            node.kind = ExprKind::Variable;
            node.span = current_.span;
            node.name = current_.text;
            advance();
            return node;
        }
        case TokenKind::LParen: {
            const std::size_t begin = current_.span.begin;
            advance();
            ExprNode node = parse_expression();
            if (current_.kind != TokenKind::RParen) {
                throw ParseError("expected ')'", current_.span.begin, current_.span.end);
            }
            node.span = {begin, current_.span.end};
            advance();
            return node;
        }
        case TokenKind::End:
            throw ParseError("unexpected end of input", current_.span.begin,
                             current_.span.end);
        default:
            throw ParseError("expected a number, variable or '('", current_.span.begin,
                             current_.span.end);
        }
    }

    Lexer lexer_;
    Token current_;
};

void collect_variables(const ExprNode& node, std::set<std::string>& out) {
    if (node.kind == ExprKind::Variable) {
        out.insert(node.name);
    }
    for (const ExprNode& child : node.children) {
        collect_variables(child, out);
    }
}

} // namespace

std::vector<std::string> ExprNode::variables() const {
    std::set<std::string> names;
    collect_variables(*this, names);
    return {names.begin(), names.end()};
}

ExprAst parse(std::string_view source) {
    Parser parser(source);
    ExprNode root = parser.parse_expression();
    parser.expect_end();
    return root;
}

ContinuousPoly lower(const ExprAst& ast) {
    switch (ast.kind) {
    case ExprKind::Number:
        return ContinuousPoly::constant(ast.number);
    case ExprKind::Variable:
        return ContinuousPoly::variable(ast.name);
    case ExprKind::Neg:
        return -lower(ast.children[0]);
    case ExprKind::Add:
        return lower(ast.children[0]) + lower(ast.children[1]);
    case ExprKind::Sub:
        return lower(ast.children[0]) - lower(ast.children[1]);
    case ExprKind::Mul:
        return lower(ast.children[0]) * lower(ast.children[1]);
    case ExprKind::Pow:
        return lower(ast.children[0]).pow(static_cast<unsigned>(ast.exponent));
    }
    throw InvalidArgument("corrupt AST node");
}

double evaluate_ast(const ExprAst& ast, const std::map<std::string, double>& assignment) {
    switch (ast.kind) {
    case ExprKind::Number:
        return ast.number;
    case ExprKind::Variable: {
        auto it = assignment.find(ast.name);
        if (it == assignment.end()) {
            throw DomainError("assignment is missing variable '" + ast.name + "'");
        }
        return it->second;
    }
    case ExprKind::Neg:
        return -evaluate_ast(ast.children[0], assignment);
    case ExprKind::Add:
        return evaluate_ast(ast.children[0], assignment) +
               evaluate_ast(ast.children[1], assignment);
    case ExprKind::Sub:
        return evaluate_ast(ast.children[0], assignment) -
               evaluate_ast(ast.children[1], assignment);
    case ExprKind::Mul:
        return evaluate_ast(ast.children[0], assignment) *
               evaluate_ast(ast.children[1], assignment);
    case ExprKind::Pow: {
        const double base = evaluate_ast(ast.children[0], assignment);
        double value = 1.0;
        for (int i = 0; i < ast.exponent; ++i) {
            value *= base;
        }
        return value;
    }
    }
    throw InvalidArgument("corrupt AST node");
}

} // namespace polyq
