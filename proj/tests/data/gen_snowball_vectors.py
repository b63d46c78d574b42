"""Regenerates snowball_es_vectors.tsv with the reference Python stemmer.

The word list combines a set of common Spanish words with systematic
stem + suffix forms so that every suffix table entry is exercised.
"""
import itertools
import re
import pathlib

import snowballstemmer

HERE = pathlib.Path(__file__).parent
SOURCE = HERE.parent.parent / "src" / "corpus" / "snowball_spanish.cpp"

COMMON = """
a abajo abierto abogado abrazo abril absoluto abuela acabar acaso acción aceite acerca
acompañar acuerdo además adentro adiós administración aeropuerto agua aguardiente ahora
aire alcalde alegría algo alguien alrededor alumno amanecer amarillo amigo amor análisis
ancho andar ángel animal año antes antigüedad aparecer apenas aprender aquí árbol arma
arriba asamblea así asunto atención aunque autobús autoridad avión ayer ayuda azul bailar
bajo bandera barrio bastante beber biblioteca bien blanco boca bravoooo brazo bueno
buscar caballo cabeza cada caer café caja calle cama cambiar camino campaña campo canción
candidato cantar capaz cara cárcel carne carrera carta casa casi caso causa celebrar
cerca cerrar chávez ciudad ciudadano claro cocina coche colegio comer comisión como
compañero comunicación comunidad conciencia congreso conocer consejo constitución contar
contra corazón correr corrupción cosa crear crecer creer crisis cuando cuerpo cuidado
culpa cultura dar debate decir defensa dejar delito democracia denuncia derecho desarrollo
descubrir desde después destino día diálogo diario dictadura diferente difícil dinero
diputado dirección discurso distinto doctor dolor domingo donde dormir economía edad
educación ejército elección elecciones electoral empresa encontrar enemigo entender
entonces escribir escuela esfuerzo español esperanza esperar esposa estado estudiante
éxito explicar fácil falta familia favor fecha feliz fiesta final fondo fraude frente
fuego fuerza futuro ganar gente gobernador gobierno gracias grande guerra gustar haber
hablar hacer hambre hermano hijo historia hombre hora hoy idea iglesia igualdad imagen
importante información interés invierno ir jamás joven juez jugar justicia lado largo
lectura lejos ley libertad libro líder llamar llegar llevar lluvia lucha lugar madre
maestro mal mañana mandar manera mano mar más mayoría medio mejor memoria mesa miedo
militar ministro minuto mirar momento mujer mundo nación nacional nada necesitar negro
ningún niño noche nombre noticia nuevo nunca obrero oposición orden organización país
palabra papel parlamentario parte partido pasar patria paz pedir pensar pequeño perder
periodista persona pie plan población pobre poder policía política político pregunta
presidente preso prisión problema proceso pueblo puerta querer recuerdo régimen respeto
resultado revolución rico saber salir salud seguridad seguir semana sentir señor ser
siempre silencio sistema situación sociedad sol soldado sueño tarde tener tiempo tierra
trabajo triunfo urgenteeeee valor venezuela venezolano verdad vida violencia voluntad
votar voto votación votaciones yaaaa zapato cantándole diciéndome dámelo escribiéndoles
poniéndoselo haciéndolas levantarse sentarnos irse arrepentidos güero pingüino
""".split()

STEMS = [
    "cant", "habl", "corr", "viv", "nacion", "organiz", "product", "elect", "vot", "gobern",
    "polit", "presid", "democrat", "libert", "trabaj", "comunic", "inform", "administr",
    "constitu", "particip", "contin", "reun", "pregunt", "ejecut", "abund", "legal", "ban",
    "ot", "ra", "c", "mir", "ten", "compr", "decid", "escrib", "rom", "arquitect", "fundament",
]


def suffixes():
    text = SOURCE.read_text(encoding="utf-8")
    found = set()
    for m in re.finditer(r'U"([^"]+)"', text):
        found.add(m.group(1))
    return sorted(found)


def words():
    out = set(COMMON)
    sfx = suffixes()
    for stem, s in itertools.product(STEMS, sfx):
        out.add(stem + s)
        out.add(stem + s + "s")
    for stem, host, pron in itertools.product(STEMS[:8], ["ando", "iendo", "ar", "er", "ir", "ándo", "iéndo", "yendo"], ["me", "se", "sela", "selo", "la", "le", "lo", "nos", "les", "los", "las"]):
        out.add(stem + host + pron)
    for s in sfx:
        out.add(s)
    return sorted(w for w in out if w)


def main():
    stemmer = snowballstemmer.stemmer("spanish")
    rows = [f"{w}\t{stemmer.stemWord(w)}" for w in words()]
    (HERE / "snowball_es_vectors.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(len(rows), "vectors")


if __name__ == "__main__":
    main()
