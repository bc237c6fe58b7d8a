#include "trilin/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace trilin {

namespace {

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Type type;
    double number = 0.0;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < (int)src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
        int start = pos_;
        if (pos_ >= (int)src_.size()) {
            current_ = {Token::Type::End, 0.0, "", {start, start}};
            return;
        }
        char c = src_[pos_];
        auto single = [&](Token::Type t) {
            ++pos_;
            current_ = {t, 0.0, std::string(1, c), {start, pos_}};
        };
        if (std::isdigit((unsigned char)c) || (c == '.' && pos_ + 1 < (int)src_.size() &&
                                               std::isdigit((unsigned char)src_[pos_ + 1]))) {
            const char* begin = src_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            pos_ += (int)(end - begin);
            current_ = {Token::Type::Number, v, src_.substr(start, pos_ - start), {start, pos_}};
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            while (pos_ < (int)src_.size() &&
                   (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
                ++pos_;
            current_ = {Token::Type::Ident, 0.0, src_.substr(start, pos_ - start), {start, pos_}};
            return;
        }
        switch (c) {
            case '+': single(Token::Type::Plus); return;
            case '-': single(Token::Type::Minus); return;
            case '*': single(Token::Type::Star); return;
            case '/': single(Token::Type::Slash); return;
            case '^': single(Token::Type::Caret); return;
            case '(': single(Token::Type::LParen); return;
            case ')': single(Token::Type::RParen); return;
            case ',': single(Token::Type::Comma); return;
        }
        throw ExpressionError("unexpected character '" + std::string(1, c) + "'",
                              {start, start + 1});
    }

    const std::string& src_;
    int pos_ = 0;
    Token current_;
};

const std::map<std::string, std::pair<FuncKind, int>>& function_table() {
    static const std::map<std::string, std::pair<FuncKind, int>> table = {
        {"sin", {FuncKind::Sin, 1}},   {"cos", {FuncKind::Cos, 1}},
        {"exp", {FuncKind::Exp, 1}},   {"tanh", {FuncKind::Tanh, 1}},
        {"cosh", {FuncKind::Cosh, 1}}, {"sinh", {FuncKind::Sinh, 1}},
        {"abs", {FuncKind::Abs, 1}},   {"pow", {FuncKind::Pow, 2}},
    };
    return table;
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src), lex_(src) {}

    ExprPtr parse() {
        ExprPtr e = parse_add();
        if (lex_.peek().type != Token::Type::End)
            throw ExpressionError("unexpected token '" + lex_.peek().text + "'", lex_.peek().span);
        return e;
    }

private:
    ExprPtr make(ExpressionAst::Kind k, SourceSpan span) {
        auto n = std::make_unique<ExpressionAst>();
        n->kind = k;
        n->span = span;
        return n;
    }

    ExprPtr parse_add() {
        ExprPtr left = parse_mul();
        while (lex_.peek().type == Token::Type::Plus || lex_.peek().type == Token::Type::Minus) {
            Token op = lex_.take();
            ExprPtr right = parse_mul();
            auto n = make(ExpressionAst::Kind::Binary, {left->span.begin, right->span.end});
            n->bin_op = op.type == Token::Type::Plus ? BinaryOp::Add : BinaryOp::Sub;
            n->children.push_back(std::move(left));
            n->children.push_back(std::move(right));
            left = std::move(n);
        }
        return left;
    }

    ExprPtr parse_mul() {
        ExprPtr left = parse_pow();
        while (lex_.peek().type == Token::Type::Star || lex_.peek().type == Token::Type::Slash) {
            Token op = lex_.take();
            ExprPtr right = parse_pow();
            auto n = make(ExpressionAst::Kind::Binary, {left->span.begin, right->span.end});
            n->bin_op = op.type == Token::Type::Star ? BinaryOp::Mul : BinaryOp::Div;
            n->children.push_back(std::move(left));
            n->children.push_back(std::move(right));
            left = std::move(n);
        }
        return left;
    }

    ExprPtr parse_pow() {
        ExprPtr left = parse_unary();
        while (lex_.peek().type == Token::Type::Caret) {
            lex_.take();
            ExprPtr right = parse_unary();
            auto n = make(ExpressionAst::Kind::Binary, {left->span.begin, right->span.end});
            n->bin_op = BinaryOp::Pow;
            n->children.push_back(std::move(left));
            n->children.push_back(std::move(right));
            left = std::move(n);
        }
        return left;
    }

    ExprPtr parse_unary() {
        if (lex_.peek().type == Token::Type::Minus) {
            Token op = lex_.take();
            ExprPtr child = parse_unary();
            auto n = make(ExpressionAst::Kind::Unary, {op.span.begin, child->span.end});
            n->children.push_back(std::move(child));
            return n;
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        Token t = lex_.take();
        switch (t.type) {
            case Token::Type::Number: {
                auto n = make(ExpressionAst::Kind::Literal, t.span);
                n->literal = t.number;
                return n;
            }
            case Token::Type::LParen: {
                ExprPtr e = parse_add();
                expect(Token::Type::RParen, ")");
                return e;
            }
            case Token::Type::Ident:
                return parse_ident(t);
            default:
                throw ExpressionError("expected expression, got '" + t.text + "'", t.span);
        }
    }

    ExprPtr parse_ident(const Token& t) {
        if (lex_.peek().type == Token::Type::LParen) {
            auto it = function_table().find(t.text);
            if (it == function_table().end())
                throw ExpressionError("unknown function '" + t.text + "'", t.span);
            lex_.take();  // (
            std::vector<ExprPtr> args;
            if (lex_.peek().type != Token::Type::RParen) {
                args.push_back(parse_add());
                while (lex_.peek().type == Token::Type::Comma) {
                    lex_.take();
                    args.push_back(parse_add());
                }
            }
            Token close = expect(Token::Type::RParen, ")");
            if ((int)args.size() != it->second.second) {
                std::ostringstream os;
                os << "function '" << t.text << "' expects " << it->second.second
                   << " argument(s), got " << args.size();
                throw ExpressionError(os.str(), {t.span.begin, close.span.end});
            }
            auto n = make(ExpressionAst::Kind::Call, {t.span.begin, close.span.end});
            n->func = it->second.first;
            n->children = std::move(args);
            return n;
        }
        if (t.text == "t") {
            return make(ExpressionAst::Kind::TimeVar, t.span);
        }
        if (t.text.size() >= 2 && t.text[0] == 'x') {
            bool digits = true;
            for (size_t i = 1; i < t.text.size(); ++i)
                if (!std::isdigit((unsigned char)t.text[i])) digits = false;
            if (digits) {
                int idx = std::atoi(t.text.c_str() + 1);
                if (idx < 1)
                    throw ExpressionError("state variable index must be >= 1", t.span);
                auto n = make(ExpressionAst::Kind::StateVar, t.span);
                n->state_index = idx - 1;
                return n;
            }
        }
        throw ExpressionError("unknown identifier '" + t.text + "'", t.span);
    }

    Token expect(Token::Type ty, const char* what) {
        if (lex_.peek().type != ty)
            throw ExpressionError(std::string("expected '") + what + "'", lex_.peek().span);
        return lex_.take();
    }

    const std::string& src_;
    Lexer lex_;
};

std::string func_name(FuncKind f) {
    switch (f) {
        case FuncKind::Sin: return "sin";
        case FuncKind::Cos: return "cos";
        case FuncKind::Exp: return "exp";
        case FuncKind::Tanh: return "tanh";
        case FuncKind::Cosh: return "cosh";
        case FuncKind::Sinh: return "sinh";
        case FuncKind::Abs: return "abs";
        case FuncKind::Pow: return "pow";
    }
    return "?";
}

int node_precedence(const ExpressionAst& n) {
    switch (n.kind) {
        case ExpressionAst::Kind::Binary:
            switch (n.bin_op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 3;
            }
            return 1;
        case ExpressionAst::Kind::Unary: return 4;
        default: return 5;
    }
}

void print_node(const ExpressionAst& n, std::ostream& os);

void print_child(const ExpressionAst& child, int parent_prec, bool right_side, std::ostream& os) {
    int cp = node_precedence(child);
    bool parens = right_side ? cp <= parent_prec : cp < parent_prec;
    if (parens) os << '(';
    print_node(child, os);
    if (parens) os << ')';
}

void print_node(const ExpressionAst& n, std::ostream& os) {
    switch (n.kind) {
        case ExpressionAst::Kind::Literal: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << n.literal;
            os << tmp.str();
            return;
        }
        case ExpressionAst::Kind::TimeVar:
            os << 't';
            return;
        case ExpressionAst::Kind::StateVar:
            os << 'x' << (n.state_index + 1);
            return;
        case ExpressionAst::Kind::Unary:
            os << '-';
            print_child(*n.children[0], node_precedence(n), false, os);
            return;
        case ExpressionAst::Kind::Binary: {
            const char* op = "?";
            switch (n.bin_op) {
                case BinaryOp::Add: op = "+"; break;
                case BinaryOp::Sub: op = "-"; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow: op = "^"; break;
            }
            int p = node_precedence(n);
            print_child(*n.children[0], p, false, os);
            os << op;
            print_child(*n.children[1], p, true, os);
            return;
        }
        case ExpressionAst::Kind::Call: {
            os << func_name(n.func) << '(';
            for (size_t i = 0; i < n.children.size(); ++i) {
                if (i) os << ',';
                print_node(*n.children[i], os);
            }
            os << ')';
            return;
        }
    }
}

}  // namespace

double ExpressionAst::evaluate(double t, const Vec& x) const {
    switch (kind) {
        case Kind::Literal: return literal;
        case Kind::TimeVar: return t;
        case Kind::StateVar:
            if (state_index >= x.size())
                throw ExpressionError("state variable index exceeds dimension", span);
            return x(state_index);
        case Kind::Unary: return -children[0]->evaluate(t, x);
        case Kind::Binary: {
            double a = children[0]->evaluate(t, x);
            double b = children[1]->evaluate(t, x);
            switch (bin_op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (b == 0.0) throw ExpressionError("division by zero", span);
                    return a / b;
                case BinaryOp::Pow: return std::pow(a, b);
            }
            return 0.0;
        }
        case Kind::Call: {
            double a = children[0]->evaluate(t, x);
            switch (func) {
                case FuncKind::Sin: return std::sin(a);
                case FuncKind::Cos: return std::cos(a);
                case FuncKind::Exp: return std::exp(a);
                case FuncKind::Tanh: return std::tanh(a);
                case FuncKind::Cosh: return std::cosh(a);
                case FuncKind::Sinh: return std::sinh(a);
                case FuncKind::Abs: return std::abs(a);
                case FuncKind::Pow: return std::pow(a, children[1]->evaluate(t, x));
            }
            return 0.0;
        }
    }
    return 0.0;
}

double ExpressionAst::evaluate(double t) const {
    static const Vec empty;
    return evaluate(t, empty);
}

int ExpressionAst::max_state_index() const {
    int m = 0;
    if (kind == Kind::StateVar) m = state_index + 1;
    for (const auto& c : children) m = std::max(m, c->max_state_index());
    return m;
}

bool ExpressionAst::equals(const ExpressionAst& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case Kind::Literal:
            if (literal != other.literal) return false;
            break;
        case Kind::StateVar:
            if (state_index != other.state_index) return false;
            break;
        case Kind::Binary:
            if (bin_op != other.bin_op) return false;
            break;
        case Kind::Call:
            if (func != other.func) return false;
            break;
        default: break;
    }
    if (children.size() != other.children.size()) return false;
    for (size_t i = 0; i < children.size(); ++i)
        if (!children[i]->equals(*other.children[i])) return false;
    return true;
}

std::string ExpressionAst::pretty_print() const {
    std::ostringstream os;
    print_node(*this, os);
    return os.str();
}

ExprPtr ExpressionAst::clone() const {
    auto n = std::make_unique<ExpressionAst>();
    n->kind = kind;
    n->span = span;
    n->literal = literal;
    n->state_index = state_index;
    n->bin_op = bin_op;
    n->func = func;
    for (const auto& c : children) n->children.push_back(c->clone());
    return n;
}

ExprPtr parse_expression(const std::string& text) {
    if (text.empty()) throw ExpressionError("empty expression", {0, 0});
    Parser p(text);
    return p.parse();
}

std::pair<int, int> line_col_of(const std::string& text, int offset) {
    int line = 1, col = 1;
    for (int i = 0; i < offset && i < (int)text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace trilin
