from setuptools import setup

setup(
    name='determinant-singular-vectors',
    version='0.1.0',
    packages=['modules'],
    py_modules=['main'],
    install_requires=['numpy', 'pandas', 'sympy'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['dsv=main:main']},
    url='',
    license='',
    author='',
    author_email='',
    description='Exact verification of determinant singular vectors in affine vacuum modules'
)
