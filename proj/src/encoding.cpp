#include "bclkit/encoding.hpp"

namespace bclkit
{

CarrierIndex::CarrierIndex( const ClosureSet& carrier )
        : n{ carrier.size() }, op( n ), left( n, -1 ), right( n, -1 ), neg( n, -1 ), box( n, -1 ), dia( n, -1 ),
          demod( n, -1 ), modal_free( n ), negations( n )
{
    auto at = [ & ]( const Formula& f ) {
        auto i = carrier.index_of( f );
        return i ? static_cast<int>( *i ) : -1;
    };
    for ( std::size_t i = 0; i < n; ++i )
    {
        const Formula& f = carrier[ i ];
        op[ i ] = f.op();
        modal_free[ i ] = is_modality_free( f );
        negations[ i ] = strip_negations( f ).depth;
        demod[ i ] = at( demodalize( f ) );
        if ( f.is_unary() )
        {
            int child = at( f.operand() );
            left[ i ] = child;
            if ( f.is( Op::neg ) )
                neg[ child ] = static_cast<int>( i );
            else if ( f.is( Op::box ) )
                box[ child ] = static_cast<int>( i );
            else
                dia[ child ] = static_cast<int>( i );
        }
        else if ( f.is_binary() )
        {
            left[ i ] = at( f.left() );
            right[ i ] = at( f.right() );
            if ( f.is( Op::arrow ) )
                arrow[ { left[ i ], right[ i ] } ] = static_cast<int>( i );
            else if ( f.is( Op::conj ) )
                conj[ { left[ i ], right[ i ] } ] = static_cast<int>( i );
        }
    }
}

int CarrierIndex::find_arrow( int a, int b ) const
{
    if ( a < 0 || b < 0 )
        return -1;
    auto it = arrow.find( { a, b } );
    return it == arrow.end() ? -1 : it->second;
}

int CarrierIndex::find_conj( int a, int b ) const
{
    if ( a < 0 || b < 0 )
        return -1;
    auto it = conj.find( { a, b } );
    return it == conj.end() ? -1 : it->second;
}

int CarrierIndex::negate( int i, std::size_t times ) const
{
    for ( std::size_t t = 0; t < times && i >= 0; ++t )
        i = neg[ i ];
    return i;
}

namespace
{

class Encoder
{
public:
    Encoder( const CarrierIndex& ix, Cnf& cnf, std::size_t offset ) : _ix{ ix }, _cnf{ cnf }, _offset{ offset } {}

    void encode( const Condition& c );

private:
    int x( int i, int j ) const { return pos( _offset + _ix.var( i, j ) ); }

    void force( int i, int j )
    {
        if ( i >= 0 && j >= 0 )
            _cnf.add( { x( i, j ) } );
    }
    void forbid( int i, int j ) { _cnf.add( { -x( i, j ) } ); }
    void implies( int i, int j, int k, int l )
    {
        if ( k < 0 || l < 0 || ( i == k && j == l ) )
            return;
        _cnf.add( { -x( i, j ), x( k, l ) } );
    }
    void iff( int i, int j, int k, int l )
    {
        implies( i, j, k, l );
        implies( k, l, i, j );
    }

    const CarrierIndex& _ix;
    Cnf& _cnf;
    std::size_t _offset;
};

void Encoder::encode( const Condition& c )
{
    const int n = static_cast<int>( _ix.n );
    const auto& ix = _ix;
    switch ( c.kind )
    {
    case Cond::a1:
        for ( int i = 0; i < n; ++i )
            if ( ix.neg[ i ] >= 0 )
                forbid( i, ix.neg[ i ] );
        break;
    case Cond::a2:
        for ( int i = 0; i < n; ++i )
            if ( ix.neg[ i ] >= 0 )
                forbid( ix.neg[ i ], i );
        break;
    case Cond::b0:
        for ( int i = 0; i < n; ++i )
            for ( int j = 0; j < n; ++j )
                if ( ix.neg[ j ] >= 0 )
                    _cnf.add( { -x( i, j ), -x( i, ix.neg[ j ] ) } );
        break;
    case Cond::b0p:
        for ( int i = 0; i < n; ++i )
            for ( int j = 0; j < n; ++j )
                if ( ix.neg[ i ] >= 0 )
                    _cnf.add( { -x( i, j ), -x( ix.neg[ i ], j ) } );
        break;
    case Cond::b1:
        // R(A->B, ~(A->~B))
        for ( const auto& [ ab, a_b ] : ix.arrow )
        {
            int other = ix.find_arrow( ab.first, ix.neg[ ab.second ] );
            force( a_b, other >= 0 ? ix.neg[ other ] : -1 );
        }
        break;
    case Cond::b2:
        // R(A->~B, ~(A->B))
        for ( const auto& [ ab, a_b ] : ix.arrow )
        {
            int other = ix.find_arrow( ab.first, ix.neg[ ab.second ] );
            force( other, ix.neg[ a_b ] );
        }
        break;
    case Cond::b1p:
        // R(A->B, ~(~A->B))
        for ( const auto& [ ab, a_b ] : ix.arrow )
        {
            int other = ix.find_arrow( ix.neg[ ab.first ], ab.second );
            force( a_b, other >= 0 ? ix.neg[ other ] : -1 );
        }
        break;
    case Cond::b2p:
        // R(~A->B, ~(A->B))
        for ( const auto& [ ab, a_b ] : ix.arrow )
        {
            int other = ix.find_arrow( ix.neg[ ab.first ], ab.second );
            force( other, ix.neg[ a_b ] );
        }
        break;
    case Cond::cun:
        for ( int i = 0; i < n; ++i )
            for ( int j = 0; j < n; ++j )
                implies( i, j, ix.neg[ i ], ix.neg[ j ] );
        break;
    case Cond::gcun:
        for ( int i = 0; i < n; ++i )
        {
            if ( ix.negations[ i ] < c.quad.k )
                continue;
            for ( int j = 0; j < n; ++j )
                if ( ix.negations[ j ] >= c.quad.l )
                    implies( i, j, ix.negate( i, c.quad.m - c.quad.k ), ix.negate( j, c.quad.n - c.quad.l ) );
        }
        break;
    case Cond::r1:
        for ( int i = 0; i < n; ++i )
            for ( int j = 0; j < n; ++j )
                if ( ix.neg[ j ] >= 0 )
                    iff( i, ix.neg[ j ], i, j );
        break;
    case Cond::r2:
        for ( const auto& [ bc, conj ] : ix.conj )
        {
            int arr = ix.find_arrow( bc.first, bc.second );
            if ( arr < 0 )
                continue;
            for ( int i = 0; i < n; ++i )
                iff( i, conj, i, arr );
        }
        break;
    case Cond::r3:
        for ( int i = 0; i < n; ++i )
            for ( int j = i + 1; j < n; ++j )
                iff( i, j, j, i );
        break;
    case Cond::r4:
        for ( int i = 0; i < n; ++i )
            force( i, i );
        break;
    case Cond::r5:
        for ( const auto& [ bc, conj ] : ix.conj )
            for ( int i = 0; i < n; ++i )
            {
                _cnf.add( { -x( i, conj ), x( i, bc.first ), x( i, bc.second ) } );
                implies( i, bc.first, i, conj );
                implies( i, bc.second, i, conj );
            }
        break;
    case Cond::demR:
    case Cond::demL:
    case Cond::demE:
        for ( int i = 0; i < n; ++i )
            for ( int j = 0; j < n; ++j )
            {
                int di = ix.demod[ i ], dj = ix.demod[ j ];
                if ( di < 0 || dj < 0 )
                    continue;
                if ( c.kind != Cond::demL )
                    implies( i, j, di, dj );
                if ( c.kind != Cond::demR )
                    implies( di, dj, i, j );
            }
        break;
    case Cond::d1:
    case Cond::d2:
        // R(<>A, ~[]~A) and its converse
        for ( int i = 0; i < n; ++i )
        {
            int d = ix.dia[ i ], ni = ix.neg[ i ];
            int dual = ni >= 0 && ix.box[ ni ] >= 0 ? ix.neg[ ix.box[ ni ] ] : -1;
            if ( d < 0 || dual < 0 )
                continue;
            if ( c.kind == Cond::d1 )
                force( d, dual );
            else
                force( dual, d );
        }
        break;
    case Cond::k1:
        // R([](A->B), []A -> []B)
        for ( const auto& [ ab, a_b ] : ix.arrow )
            force( ix.box[ a_b ], ix.find_arrow( ix.box[ ab.first ], ix.box[ ab.second ] ) );
        break;
    case Cond::t:
        for ( int i = 0; i < n; ++i )
            force( ix.box[ i ], i );
        break;
    case Cond::d:
        for ( int i = 0; i < n; ++i )
            force( ix.box[ i ], ix.dia[ i ] );
        break;
    case Cond::b:
        for ( int i = 0; i < n; ++i )
            force( i, ix.dia[ i ] >= 0 ? ix.box[ ix.dia[ i ] ] : -1 );
        break;
    case Cond::iv:
        for ( int i = 0; i < n; ++i )
            if ( ix.box[ i ] >= 0 )
                force( ix.box[ i ], ix.box[ ix.box[ i ] ] );
        break;
    case Cond::v:
        for ( int i = 0; i < n; ++i )
            if ( ix.dia[ i ] >= 0 )
                force( ix.dia[ i ], ix.box[ ix.dia[ i ] ] );
        break;
    case Cond::d1_d:
    case Cond::d2_d:
        for ( int i = 0; i < n; ++i )
        {
            if ( !ix.modal_free[ i ] )
                continue;
            int nn = ix.negate( i, 2 );
            if ( c.kind == Cond::d1_d )
                force( nn >= 0 ? i : -1, nn );
            else
                force( nn, i );
        }
        break;
    case Cond::k1_d:
        for ( int i = 0; i < n; ++i )
            if ( ix.modal_free[ i ] && ix.op[ i ] == Op::arrow )
                force( i, i );
        break;
    case Cond::t_d:
    case Cond::d_d:
    case Cond::b_d:
    case Cond::iv_d:
    case Cond::v_d:
        for ( int i = 0; i < n; ++i )
            if ( ix.modal_free[ i ] )
                force( i, i );
        break;
    case Cond::k2:
    case Cond::k2_d: break;
    }
}

} // namespace

Cnf encode( const CarrierIndex& index, const ConditionSet& conds )
{
    Cnf cnf;
    cnf.vars = index.n * index.n;
    Encoder enc{ index, cnf, 0 };
    for ( const auto& c : conds.conditions() )
        enc.encode( c );
    return cnf;
}

Cnf encode_frame( const CarrierIndex& index, const ConditionSet& conds,
                  const std::vector<std::vector<std::size_t>>& successors )
{
    const std::size_t n = index.n, block = n * n;
    Cnf cnf;
    cnf.vars = successors.size() * block;
    for ( std::size_t w = 0; w < successors.size(); ++w )
    {
        Encoder enc{ index, cnf, w * block };
        for ( const auto& c : conds.conditions() )
            enc.encode( c );
    }
    for ( Cond kind : { Cond::k2, Cond::k2_d } )
    {
        if ( !conds.has( kind ) )
            continue;
        for ( std::size_t w = 0; w < successors.size(); ++w )
            for ( std::size_t i = 0; i < n; ++i )
                for ( std::size_t j = 0; j < n; ++j )
                {
                    int ti = kind == Cond::k2 ? index.box[ i ] : index.demod[ i ];
                    int tj = kind == Cond::k2 ? index.box[ j ] : index.demod[ j ];
                    if ( ti < 0 || tj < 0 )
                        continue;
                    std::vector<int> clause{ pos( w * block + index.var( ti, tj ) ) };
                    for ( auto u : successors[ w ] )
                        clause.push_back( neg( u * block + index.var( i, j ) ) );
                    cnf.add( std::move( clause ) );
                }
    }
    return cnf;
}

} // namespace bclkit
